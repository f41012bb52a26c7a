#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vie/quad.hpp"

using namespace vie;

namespace {

double apply(const WeightedPoints& wp, double (*g)(double)) {
    double s = 0.0;
    for (std::size_t i = 0; i < wp.points.size(); ++i) s += wp.weights[i] * g(wp.points[i]);
    return s;
}

} // namespace

TEST(GaussLegendre, SmallRules) {
    auto r1 = gauss_legendre(1);
    ASSERT_EQ(r1.size(), 1u);
    EXPECT_NEAR(r1.nodes[0], 0.0, 1e-16);
    EXPECT_NEAR(r1.weights[0], 2.0, 1e-15);
    auto r2 = gauss_legendre(2);
    EXPECT_NEAR(r2.nodes[0], -1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(r2.nodes[1], 1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(r2.weights[0], 1.0, 1e-15);
    EXPECT_NEAR(r2.weights[1], 1.0, 1e-15);
}

TEST(GaussLegendre, DegreeEight) {
    auto r = gauss_legendre(5);
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 8);
    EXPECT_NEAR(s, 2.0 / 9.0, 1e-13);
}

TEST(GaussLegendre, WeightsAndExactness) {
    for (int n = 1; n <= 64; ++n) {
        auto r = gauss_legendre(n);
        double sum = 0.0;
        for (double w : r.weights) {
            EXPECT_GT(w, 0.0);
            sum += w;
        }
        EXPECT_NEAR(sum, 2.0, 1e-13) << "n=" << n;
        if (n > 32) continue;
        for (int p = 0; p <= 2 * n - 1; ++p) {
            double s = 0.0;
            for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], p);
            const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
            EXPECT_LE(std::abs(s - exact), 1e-12 * std::max(1.0, exact)) << "n=" << n << " p=" << p;
        }
    }
}

TEST(GaussLegendre, RangeChecked) {
    EXPECT_THROW(gauss_legendre(0), std::invalid_argument);
    EXPECT_THROW(gauss_legendre(65), std::invalid_argument);
}

TEST(GaussJacobi, IntegratesWeightedPolynomials) {
    // int_{-1}^{1} (1-x)^a x^k dx for k = 0, 1: 2^{a+1}/(a+1) and 2^{a+1}/(a+1) - 2^{a+2}/(a+2)
    for (double a : {-0.5, 0.3, 2.5}) {
        auto r = gauss_jacobi(6, a, 0.0);
        double s0 = 0.0, s1 = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            s0 += r.weights[i];
            s1 += r.weights[i] * r.nodes[i];
        }
        const double m0 = std::pow(2.0, a + 1) / (a + 1);
        EXPECT_NEAR(s0, m0, 1e-12 * m0);
        EXPECT_NEAR(s1, m0 - std::pow(2.0, a + 2) / (a + 2), 1e-12 * m0);
    }
    auto leg = gauss_legendre(7);
    auto jac = gauss_jacobi(7, 0.0, 0.0);
    for (int i = 0; i < 7; ++i) {
        EXPECT_NEAR(leg.nodes[i], jac.nodes[i], 1e-13);
        EXPECT_NEAR(leg.weights[i], jac.weights[i], 1e-13);
    }
}

TEST(IntegrateBox, Examples) {
    const double lo2[] = {0.0, 0.0};
    const double hi2[] = {1.0, 1.0};
    EXPECT_NEAR(integrate_box([](std::span<const double>) { return 1.0; }, lo2, hi2, 1), 1.0,
                1e-15);
    EXPECT_NEAR(integrate_box([](std::span<const double> t) { return t[0] * t[1]; }, lo2, hi2, 2),
                0.25, 1e-15);
    const double lo1[] = {0.0};
    const double hi1[] = {1.0};
    EXPECT_NEAR(integrate_box([](std::span<const double> t) { return std::pow(t[0], 2.5); }, lo1,
                              hi1, 20),
                2.0 / 7.0, 1e-8);
}

TEST(IntegrateBox, SeparableProduct) {
    const double lo[] = {0.1, -0.4, 0.0};
    const double hi[] = {0.9, 0.7, 2.0};
    auto f = [](std::span<const double> t) { return std::exp(t[0]) * std::cos(t[1]) * t[2] * t[2]; };
    const double want =
        (std::exp(0.9) - std::exp(0.1)) * (std::sin(0.7) - std::sin(-0.4)) * (8.0 / 3.0);
    EXPECT_NEAR(integrate_box(f, lo, hi, 12), want, 1e-12);
}

TEST(PowerMoment, Examples) {
    EXPECT_NEAR(power_moment(0.0, 0.0, 1.0), 1.0, 1e-14);
    EXPECT_NEAR(power_moment(1.0, 0.0, 1.0), 0.5, 1e-14);
    EXPECT_NEAR(power_moment(2.5, 2.5, 1.0), 5.0 * std::numbers::pi / 1024.0, 1e-15);
    const double c = 5.0 * std::numbers::pi / 1024.0;
    EXPECT_NEAR(c * c, 25.0 * std::numbers::pi * std::numbers::pi / 1048576.0, 1e-18);
}

TEST(PowerMoment, ScalingLaw) {
    for (double a : {0.0, 0.5, 2.5, 3.7})
        for (double b : {-0.5, 0.0, 1.0, 2.5})
            for (double t : {0.0, 0.3, 1.0, 2.7}) {
                const double want = std::pow(t, a + b + 1) * power_moment(a, b, 1.0);
                EXPECT_NEAR(power_moment(a, b, t), want, 1e-13 * std::max(1.0, std::abs(want)));
            }
}

TEST(PowerMoment, Rejections) {
    EXPECT_THROW(power_moment(-1.0, 0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(power_moment(0.0, -1.5, 1.0), std::invalid_argument);
    EXPECT_THROW(power_moment(0.0, 0.0, -1.0), std::invalid_argument);
}

TEST(VolterraRule, TouchingInterval) {
    RuleCache cache;
    // int_0^1 (1 - tau)^p tau^2 dtau = B(p + 1, 3)
    for (double p : {0.0, 1.0, 2.5, 3.5}) {
        const double want = power_moment(p, 2.0, 1.0);
        auto gj = volterra_rule(1.0, p, 0.0, 1.0, 6, cache, TouchingRule::GaussJacobi);
        EXPECT_NEAR(apply(gj, [](double t) { return t * t; }), want, 1e-14);
        auto gl = volterra_rule(1.0, p, 0.0, 1.0, 8, cache, TouchingRule::GaussLegendre);
        EXPECT_NEAR(apply(gl, [](double t) { return t * t; }), want, 1e-7);
    }
}

TEST(VolterraRule, SeparatedInterval) {
    RuleCache cache;
    // int_0^0.5 (1 - tau)^{2.5} dtau = (1 - 0.5^{3.5}) / 3.5
    auto wp = volterra_rule(1.0, 2.5, 0.0, 0.5, 8, cache);
    EXPECT_NEAR(apply(wp, [](double) { return 1.0; }), (1.0 - std::pow(0.5, 3.5)) / 3.5, 1e-14);
    // close to the singular point the interval is split toward it
    auto near = volterra_rule(1.0, 0.5, 0.0, 0.999, 8, cache);
    EXPECT_GT(near.points.size(), 8u);
    EXPECT_NEAR(apply(near, [](double) { return 1.0; }),
                (1.0 - std::pow(0.001, 1.5)) / 1.5, 1e-12);
}

TEST(VolterraRule, UnboundedIntegrandUsesJacobi) {
    RuleCache cache;
    // int_0^1 (1 - tau)^{-1/2} tau dtau = B(1/2, 2) = 4/3
    auto wp = volterra_rule(1.0, -0.5, 0.0, 1.0, 4, cache, TouchingRule::GaussLegendre);
    EXPECT_NEAR(apply(wp, [](double t) { return t; }), 4.0 / 3.0, 1e-14);
}

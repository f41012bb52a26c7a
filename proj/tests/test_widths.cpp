#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "vie/widths.hpp"

using namespace vie;

namespace {

ClassParams q2() { return derive_class_params(2, 0.5, ClassKind::QStar, 2, 1.0, 1.0); }

double v_of(const ClassParams& p) { return static_cast<double>(p.s) / (p.s - p.gamma); }

} // namespace

TEST(Bump, ZeroOutsideAndOnFaces) {
    const ClassParams p = q2();
    BumpSpec b{layer_corner_cube(4, 1.0, 2, 1.2, 1), p, 4, 1.2, 1.0};
    const Cell& c = b.cell;
    const double out[] = {c.hi[0] + 0.01, 0.5 * (c.lo[1] + c.hi[1])};
    EXPECT_EQ(bump_eval(b, out), 0.0);
    const double far[] = {0.99, 0.99};
    EXPECT_EQ(bump_eval(b, far), 0.0);
    const double face[] = {c.lo[0], 0.5 * (c.lo[1] + c.hi[1])};
    EXPECT_EQ(bump_eval(b, face), 0.0);
    // continuity toward the faces
    const double mid = 0.5 * (c.lo[1] + c.hi[1]);
    double prev = 1e300;
    for (double eps : {1e-2, 1e-3, 1e-4, 1e-5}) {
        const double in[] = {c.lo[0] + eps * (c.hi[0] - c.lo[0]), mid};
        const double val = bump_eval(b, in);
        EXPECT_GT(val, 0.0);
        EXPECT_LT(val, prev);
        prev = val;
    }
    EXPECT_LT(prev, 1e-12 * bump_sup(b));
}

TEST(Bump, CentreFormula) {
    const ClassParams p = q2();
    ASSERT_EQ(p.s, 3);
    const int N = 5;
    const double v = 1.4, A = 2.5;
    const double h = std::pow(1.0 / N, v);
    Cell c;
    c.k = 0;
    c.lo = {0.0, 0.0};
    c.hi = {h, h};
    c.index = {0, 0};
    BumpSpec b{c, p, N, v, A};
    const double centre[] = {h / 2, h / 2};
    const double want =
        A * std::pow(h * h / 4, 2 * p.s) / (std::pow(h, 3 * p.s) * std::pow(1.0 / N, v * p.gamma));
    EXPECT_NEAR(bump_eval(b, centre), want, 1e-12 * want);
    EXPECT_NEAR(bump_sup(b), want, 1e-12 * want);
}

TEST(Bump, SupAtCentre) {
    const ClassParams p = q2();
    BumpSpec b{layer_corner_cube(6, 1.0, 2, v_of(p), 2), p, 6, v_of(p), 1.0};
    std::mt19937 gen(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Cell& c = b.cell;
    for (int i = 0; i < 500; ++i) {
        const double t[] = {c.lo[0] + u(gen) * (c.hi[0] - c.lo[0]),
                            c.lo[1] + u(gen) * (c.hi[1] - c.lo[1])};
        EXPECT_LE(bump_eval(b, t), bump_sup(b) * (1.0 + 1e-14));
    }
}

TEST(Bump, IndependentOfLayer) {
    const ClassParams p = q2();
    const double v = v_of(p);
    double lo = 1e300, hi = 0.0;
    for (int k = 0; k < 8; ++k) {
        const double s = bump_sup({layer_corner_cube(8, 1.0, 2, v, k), p, 8, v, 1.0});
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    EXPECT_LE(hi / lo, 4.0);
}

TEST(Bump, ScalesLikeNToMinusS) {
    const ClassParams p = q2();
    const double v = v_of(p);
    double lo = 1e300, hi = 0.0;
    for (int N : {4, 8, 16})
        for (int k = 0; k < N; ++k) {
            const double s = bump_sup({layer_corner_cube(N, 1.0, 2, v, k), p, N, v, 1.0}) *
                             std::pow(static_cast<double>(N), p.s);
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
    EXPECT_GT(lo, 0.0);
    EXPECT_LE(hi / lo, 4.0);
}

TEST(Bump, AdmissibleScale) {
    const ClassParams p = q2();
    const double v = v_of(p);
    std::vector<double> Ns, scales;
    for (int N : {4, 8, 16, 32}) {
        BumpSpec b{layer_corner_cube(N, 1.0, 2, v, 0), p, N, v, 1.0};
        const double a = admissible_scale(b);
        EXPECT_TRUE(std::isfinite(a));
        EXPECT_GT(a, 0.0);
        EXPECT_EQ(a, admissible_scale(b));
        Ns.push_back(N);
        scales.push_back(a);
    }
    // order-r derivatives on the corner cube scale like A N^{-v (s - r - gamma)}
    EXPECT_NEAR(loglog_slope(Ns, scales), v * (p.s - p.r - p.gamma), 0.15);
}

TEST(Covering, CountExamples) {
    EXPECT_EQ(covering_count(2, 2, 1.0, CoveringStyle::BoundaryLayer), 4u);
    for (CoveringStyle st :
         {CoveringStyle::BoundaryLayer, CoveringStyle::CornerLayer, CoveringStyle::Geometric})
        for (int N : {2, 5}) {
            Covering c = st == CoveringStyle::BoundaryLayer ? boundary_layer_covering(N, 1.0, 2, 1.7)
                         : st == CoveringStyle::CornerLayer ? corner_layer_covering(N, 1.0, 2, 1.7)
                                                            : geometric_covering(N, 1.0, 2);
            EXPECT_EQ(covering_count(N, 2, 1.7, st), c.cells.size());
        }
}

TEST(Covering, CountSlopes) {
    const std::vector<double> Ns{8, 16, 32};
    for (auto [v, target] : {std::pair{3.0, 3.0}, std::pair{1.5, 2.0}}) {
        std::vector<double> counts;
        for (double N : Ns)
            counts.push_back(static_cast<double>(
                covering_count(static_cast<int>(N), 2, v, CoveringStyle::BoundaryLayer)));
        EXPECT_NEAR(loglog_slope(Ns, counts), target, 0.3) << "v=" << v;
    }
}

TEST(WidthUpper, QClassRate) {
    const ClassParams p = derive_class_params(2, 0.5, ClassKind::QStar, 1, 1.0, 1.0);
    const ClassMember f = sample_member(p, 0);
    std::vector<double> n, e;
    for (int N : {8, 16, 32, 64}) {
        const WidthEstimate w = width_upper_estimate(p, f, N);
        n.push_back(static_cast<double>(w.n));
        e.push_back(w.sup_error);
    }
    const double slope = loglog_slope(n, e);
    EXPECT_GE(slope, -p.s - 0.4);
    EXPECT_LE(slope, -p.s + 0.4);
}

TEST(WidthUpper, BClassExponential) {
    const ClassParams p = derive_class_params(2, 0.5, ClassKind::BStar, 1, 1.0, 1.0);
    const ClassMember f = sample_member(p, 0);
    std::vector<double> root_n, log2e;
    for (int N = 2; N <= 8; ++N) {
        const WidthEstimate w = width_upper_estimate(p, f, N);
        root_n.push_back(std::sqrt(static_cast<double>(w.n)));
        log2e.push_back(std::log2(w.sup_error));
    }
    EXPECT_GE(-linear_slope(root_n, log2e), 1.5);
}

TEST(WidthUpper, ConstantIsExact) {
    for (ClassKind kind : {ClassKind::QStar, ClassKind::BStar})
        for (int l : {1, 2}) {
            const ClassParams p = derive_class_params(2, 0.5, kind, l, 1.0, 1.0);
            const ClassMember one = sample_member(p, 3);
            for (int N : {1, 3, 6}) EXPECT_LE(width_upper_estimate(p, one, N).sup_error, 1e-13);
        }
}

TEST(Slopes, Fits) {
    const std::vector<double> x{1, 2, 4, 8, 16};
    std::vector<double> y;
    for (double t : x) y.push_back(3.0 * std::pow(t, -2.0));
    EXPECT_NEAR(loglog_slope(x, y), -2.0, 1e-12);
    // edge points dropped: a distorted first and last value does not matter
    y.front() *= 10.0;
    y.back() *= 0.1;
    EXPECT_NEAR(loglog_slope(x, y), -2.0, 1e-12);
    const std::vector<double> a{0, 1, 2}, b{1, 3, 5};
    EXPECT_NEAR(linear_slope(a, b), 2.0, 1e-14);
}

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "vie/funclass.hpp"

using namespace vie;

TEST(ClassParams, NonIntegerGamma) {
    const ClassParams p = derive_class_params(2, 0.5, ClassKind::QStar, 1, 1.0, 1.0);
    EXPECT_EQ(p.s, 3);
    ASSERT_TRUE(p.mu.has_value());
    EXPECT_DOUBLE_EQ(*p.mu, 0.5);
    EXPECT_DOUBLE_EQ(p.zeta, 0.5);
    EXPECT_DOUBLE_EQ(p.grading_exponent, 1.5);
}

TEST(ClassParams, TableOneClass) {
    const ClassParams p = derive_class_params(2, 2.5, ClassKind::QStar, 2, 1.0, 1.0);
    EXPECT_EQ(p.s, 5);
    EXPECT_DOUBLE_EQ(p.zeta, 0.5);
    EXPECT_DOUBLE_EQ(p.grading_exponent, 2.5);
}

TEST(ClassParams, IntegerGamma) {
    const ClassParams p = derive_class_params(3, 1.0, ClassKind::QStar, 1, 1.0, 1.0);
    EXPECT_EQ(p.s, 4);
    EXPECT_EQ(p.zeta, 0.0);
    EXPECT_FALSE(p.mu.has_value());
    EXPECT_DOUBLE_EQ(p.grading_exponent, 4.0 / 3.0);
}

TEST(ClassParams, Rejections) {
    EXPECT_THROW(derive_class_params(2, 0.0, ClassKind::QStar, 1, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(derive_class_params(2, -1.0, ClassKind::QStar, 1, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(derive_class_params(2, 1.5, ClassKind::BStar, 1, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(derive_class_params(0, 0.5, ClassKind::BStar, 1, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(derive_class_params(2, 0.5, ClassKind::QStar, 0, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(derive_class_params(2, 0.5, ClassKind::QStar, 1, 0.0, 1.0), std::invalid_argument);
    EXPECT_NO_THROW(derive_class_params(1, 1.0, ClassKind::BDoubleStar, 2, 1.0, 1.0));
}

TEST(ClassParams, InvariantsOverGrid) {
    for (int r = 1; r <= 5; ++r) {
        for (double g : {0.25, 0.5, 1.0, 1.5, 2.0, 2.5, 3.75}) {
            const ClassParams p = derive_class_params(r, g, ClassKind::QStar, 1, 1.0, 1.0);
            const double fl = std::floor(g);
            if (g == fl) {
                EXPECT_EQ(p.s, r + static_cast<int>(g));
                EXPECT_DOUBLE_EQ(p.grading_exponent, p.s / (p.s - g));
            } else {
                EXPECT_EQ(p.s, r + static_cast<int>(fl) + 1);
                EXPECT_NEAR(p.zeta, 1.0 - (g - fl), 1e-15);
                EXPECT_DOUBLE_EQ(p.grading_exponent, p.s / (p.s - fl - 1.0));
            }
            EXPECT_GE(p.grading_exponent, 1.0);
            EXPECT_GE(p.zeta, 0.0);
            EXPECT_LT(p.zeta, 1.0);
        }
    }
}

TEST(ClassKind, StringRoundTrip) {
    for (ClassKind k : {ClassKind::QStar, ClassKind::QDoubleStar, ClassKind::BStar, ClassKind::BDoubleStar})
        EXPECT_EQ(class_kind_from_string(to_string(k)), k);
    EXPECT_THROW(class_kind_from_string("Q"), std::invalid_argument);
}

TEST(Catalogue, PowerMemberValues) {
    const ClassParams p2 = derive_class_params(2, 0.5, ClassKind::QStar, 2, 1.0, 1.0);
    const ClassMember m2 = sample_member(p2, 0);
    const double one[2] = {1.0, 1.0};
    const double half[2] = {0.5, 0.5};
    EXPECT_DOUBLE_EQ(m2.f(one), 1.0);
    EXPECT_NEAR(m2.f(half), 0.03125, 1e-15);

    const ClassParams p1 = derive_class_params(2, 0.5, ClassKind::QStar, 1, 1.0, 1.0);
    const double q = 0.25;
    EXPECT_NEAR(sample_member(p1, 0).f(std::span<const double>(&q, 1)), 0.03125, 1e-15);
}

TEST(Catalogue, MonomialFormsAgree) {
    const ClassParams p = derive_class_params(2, 0.5, ClassKind::QStar, 2, 1.0, 1.0);
    for (int i = 0; i < catalogue_size(); ++i) {
        const ClassMember m = sample_member(p, i);
        EXPECT_FALSE(m.name.empty());
        EXPECT_FALSE(m.membership.empty());
        if (!m.monomials) continue;
        for (double a : {0.0, 0.1, 0.7, 1.0})
            for (double b : {0.0, 0.3, 1.0}) {
                const double t[2] = {a, b};
                EXPECT_NEAR(evaluate(*m.monomials, t), m.f(t), 1e-14);
            }
    }
    EXPECT_THROW(sample_member(p, catalogue_size()), std::out_of_range);
    EXPECT_THROW(sample_member(p, -1), std::out_of_range);
}

TEST(Catalogue, DerivativeGrowthMatchesSingularExponent) {
    std::vector<double> deltas;
    for (int e = 4; e <= 10; ++e) deltas.push_back(std::ldexp(1.0, -e));
    for (auto [r, g] : {std::pair{2, 0.5}, std::pair{1, 1.5}, std::pair{3, 0.25}}) {
        const ClassParams p = derive_class_params(r, g, ClassKind::QStar, 1, 1.0, 1.0);
        const ClassMember m = sample_member(p, 0);
        auto f = [&](double t) { return m.f(std::span<const double>(&t, 1)); };
        for (int k = r + 1; k <= p.s; ++k)
            EXPECT_NEAR(derivative_growth_slope(f, k, deltas), r + g - k, 0.1) << "r=" << r << " k=" << k;
    }
}

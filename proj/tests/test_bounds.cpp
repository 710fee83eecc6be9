#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "resbound.hpp"
#include "test_support.hpp"

using namespace resbound;
using namespace resbound::testing;

namespace {

const double kOneInterval = 3.0 - 2.0 * std::sqrt(2.0);
const double kTwoInterval = std::sqrt(2.0 / (5.0 + std::sqrt(21.0)));

}

TEST(Bounds, SharpExamples) {
    EXPECT_NEAR(lower_bound_sharp(kOneInterval, 1), 1.0 / 3.0, 1e-15);
    EXPECT_DOUBLE_EQ(lower_bound_sharp(0.3, 0), 1.0);
    EXPECT_NEAR(lower_bound_sharp(kTwoInterval, 2), 0.4, 1e-15);
    EXPECT_THROW(lower_bound_sharp(1.0, 2), InvalidInput);
    EXPECT_THROW(lower_bound_sharp(0.0, 2), InvalidInput);
    EXPECT_THROW(lower_bound_sharp(0.5, -1), InvalidInput);
}

TEST(Bounds, SharpMatchesDirectFormula) {
    for (double k : {0.01, 0.2, 0.5, 0.9, 0.999}) {
        for (int n = 0; n <= 30; ++n) {
            const double kn = std::pow(k, n);
            EXPECT_NEAR(lower_bound_sharp(k, n), 2.0 * kn / (1.0 + kn * kn), 1e-15);
        }
    }
    // Far past underflow of kappa^(2n) the bound behaves like 2 kappa^n.
    EXPECT_NEAR(std::log(lower_bound_sharp(0.9, 6000)), std::log(2.0) + 6000 * std::log(0.9), 1e-9);
    EXPECT_EQ(lower_bound_sharp(0.1, 400), 0.0);
}

TEST(Bounds, ClassicExamples) {
    EXPECT_DOUBLE_EQ(lower_bound_classic(0.5, 2), 0.25);
    EXPECT_NEAR(lower_bound_classic(kOneInterval, 1), 0.171573, 1e-6);
    EXPECT_LT(lower_bound_classic(kOneInterval, 1), lower_bound_sharp(kOneInterval, 1));
    EXPECT_DOUBLE_EQ(lower_bound_classic(0.7, 0), 1.0);
}

TEST(Bounds, SharpOverClassicRatio) {
    for (double k : {0.1, 0.5, 0.95}) {
        for (int n = 1; n <= 10; ++n) {
            const double r = lower_bound_sharp(k, n) / lower_bound_classic(k, n);
            EXPECT_NEAR(r, 2.0 / (1.0 + std::pow(k, 2 * n)), 1e-13);
            EXPECT_GT(r, 1.0);
            EXPECT_LE(r, 2.0 + 1e-13);
        }
    }
}

TEST(ClassifyEquality, Examples) {
    const auto one = make_interval_union({1.0, 2.0});
    for (int n = 1; n <= 5; ++n) EXPECT_EQ(classify_equality(one, n).cls, EqualityClass::equality) << n;

    const auto two = two_interval_set();
    EXPECT_EQ(classify_equality(two, 2).cls, EqualityClass::equality);
    const auto d3 = classify_equality(two, 3);
    EXPECT_EQ(d3.cls, EqualityClass::strict);
    EXPECT_EQ(d3.effective_degree, 2);
    const auto r3 = minres_exchange(two, 3);
    EXPECT_NEAR(r3.deviation, 0.4, 1e-12);
    EXPECT_GT(r3.deviation - lower_bound_sharp(kappa(two), 3), 1e-9);

    EXPECT_STREQ(to_string(EqualityClass::undetermined), "undetermined");
}

TEST(ClassifyEquality, AsymmetricTwoIntervalIsStrict) {
    const auto s = make_interval_union({-2.0, -1.0, 1.0, 3.0});
    for (int n = 1; n <= 4; ++n) {
        const auto res = minres_exchange(s, n);
        const auto d = classify_equality(s, res);
        EXPECT_EQ(d.cls, EqualityClass::strict) << n;
        EXPECT_GT(res.deviation - lower_bound_sharp(kappa(s), n), 1e-9) << n;
    }
}

TEST(BernsteinWalsh, RefinedBoundExamples) {
    const auto k = make_interval_union({-1.0, 1.0});
    EXPECT_NEAR(bw_refined_bound(k, 2.0, 2), 7.0, 1e-10);
    EXPECT_NEAR(bw_refined_bound(k, 2.0, 1), 2.0, 1e-10);
    EXPECT_EQ(bw_refined_bound(k, 0.5, 4), 1.0);
}

TEST(BernsteinWalsh, CheckExamples) {
    const auto k = make_interval_union({-1.0, 1.0});
    const auto eq = bw_check(k, chebyshev_t(2), 2.0);
    EXPECT_NEAR(eq.lhs, 7.0, 1e-12);
    EXPECT_NEAR(eq.rhs, 7.0, 1e-10);
    EXPECT_TRUE(eq.pass);
    EXPECT_TRUE(eq.refinement_strict);

    const auto sq = bw_check(k, RealPolynomial::monomial({0.0, 0.0, 1.0}), 2.0);
    EXPECT_NEAR(sq.lhs, 4.0, 1e-12);
    EXPECT_TRUE(sq.pass);

    const auto c = bw_check(k, RealPolynomial::constant(3.0), 2.0);
    EXPECT_DOUBLE_EQ(c.lhs, 1.0);
    EXPECT_TRUE(c.pass);

    EXPECT_THROW(bw_check(k, chebyshev_t(2), 0.5), InvalidInput);
    EXPECT_THROW(bw_check(k, RealPolynomial::constant(0.0), 2.0), InvalidInput);
}

TEST(BernsteinWalsh, RandomTriples) {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> deg(1, 8);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const auto k = random_set(rng, i % 2 == 0).set;
        std::vector<double> c(deg(rng) + 1);
        for (auto& v : c) v = coef(rng);
        c.back() = c.back() >= 0 ? c.back() + 0.1 : c.back() - 0.1;
        const auto q = RealPolynomial::chebyshev(c, k.hull_lo(), k.hull_hi());
        const double x = points_outside(rng, k, 1).front();
        const auto chk = bw_check(k, q, x);
        EXPECT_LE(chk.lhs, chk.rhs + 1e-9) << "triple " << i;
        EXPECT_LT(chk.rhs, chk.classic_rhs) << "triple " << i;
    }
}

TEST(BernsteinWalsh, EqualityForInverseImages) {
    std::mt19937_64 rng(103);
    for (const auto& [name, a] : generated_admissible()) {
        const auto image = inverse_image(a);
        const GreenFunction g(image);
        for (double x : points_outside(rng, image, 5)) {
            const auto chk = bw_check(g, a.poly, x);
            EXPECT_NEAR(chk.lhs / chk.rhs, 1.0, 1e-9) << name << " x=" << x;
        }
    }
}

TEST(CompareReport, SingleInterval) {
    const auto rows = compare_report(make_interval_union({1.0, 2.0}), 3);
    ASSERT_EQ(rows.size(), 4u);
    const double expected[] = {1.0, 1.0 / 3.0, 1.0 / 17.0, 1.0 / 99.0};
    for (int n = 0; n <= 3; ++n) {
        EXPECT_NEAR(rows[n].L, expected[n], 1e-13);
        EXPECT_NEAR(rows[n].sharp, rows[n].L, 1e-12);
        EXPECT_EQ(rows[n].equality, EqualityClass::equality);
        EXPECT_TRUE(rows[n].certified);
    }
    EXPECT_FALSE(rows[3].ln_next_equal.has_value());
    EXPECT_FALSE(*rows[0].ln_next_equal);
}

TEST(CompareReport, TwoIntervalEqualitySet) {
    const auto rows = compare_report(two_interval_set(), 3);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[2].equality, EqualityClass::equality);
    EXPECT_EQ(rows[3].equality, EqualityClass::strict);
    EXPECT_NEAR(rows[3].L, rows[2].L, 1e-12);
    EXPECT_TRUE(*rows[2].ln_next_equal);
    EXPECT_EQ(rows[3].effective_degree, 2);
}

TEST(CompareReport, DegreeZeroOnly) {
    const auto rows = compare_report(make_interval_union({1.0, 2.0}), 0);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_DOUBLE_EQ(rows[0].L, 1.0);
    EXPECT_DOUBLE_EQ(rows[0].sharp, 1.0);
    EXPECT_DOUBLE_EQ(rows[0].classic, 1.0);
    EXPECT_THROW(compare_report(make_interval_union({-1.0, 1.0}), 2), InvalidInput);
}

TEST(BoundsProperty, ChainEqualitySoundnessAndStrictness) {
    std::mt19937_64 rng(107);
    for (int i = 0; i < 40; ++i) {
        const auto s = random_set(rng, i % 2 == 0).set;
        const double k = kappa(s);
        for (int n = 0; n <= 6; ++n) {
            const auto res = minres_exchange(s, n);
            const double classic = lower_bound_classic(k, n);
            const double sharp = lower_bound_sharp(k, n);
            if (res.certified) {
                EXPECT_LE(classic, sharp);
                EXPECT_LE(sharp, res.deviation + 1e-8) << "set " << i << " n=" << n;
            }
            const auto cls = classify_equality(s, res).cls;
            if (cls == EqualityClass::equality) {
                EXPECT_LE(std::abs(res.deviation - sharp), 1e-8 * res.deviation) << "set " << i << " n=" << n;
            } else if (cls == EqualityClass::strict) {
                EXPECT_GT(res.deviation - sharp, 0.0) << "set " << i << " n=" << n;
            }
        }
    }
}

TEST(BoundsProperty, EqualityOnGeneratedImages) {
    for (const auto& [name, a] : generated_admissible()) {
        const auto image = inverse_image(a);
        if (image.contains(0.0)) continue;
        const auto res = minres_exchange(image, a.degree());
        EXPECT_EQ(classify_equality(image, res).cls, EqualityClass::equality) << name;
        EXPECT_NEAR(lower_bound_sharp(kappa(image), a.degree()) / res.deviation, 1.0, 1e-8) << name;
    }
}

TEST(BoundsProperty, NextDegreeCoincidence) {
    int checked = 0;
    for (const auto& [name, a] : generated_admissible()) {
        const auto image = inverse_image(a);
        if (image.contains(0.0) || !image.hull_contains(0.0)) continue;
        ++checked;
        const int n = a.degree();
        const auto rows = compare_report(image, n + 1);
        ASSERT_TRUE(rows[n].ln_next_equal.has_value());
        EXPECT_TRUE(*rows[n].ln_next_equal) << name;
        EXPECT_NEAR(rows[n + 1].L, rows[n].L, 1e-9 * rows[n].L) << name;
    }
    EXPECT_GE(checked, 2);
}

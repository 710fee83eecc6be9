#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "resbound.hpp"
#include "test_support.hpp"

using namespace resbound;
using namespace resbound::testing;

TEST(IntervalUnion, SingleInterval) {
    const auto s = make_interval_union({1.0, 2.0});
    EXPECT_EQ(s.ell(), 1);
    EXPECT_EQ(s.hull_lo(), 1.0);
    EXPECT_EQ(s.hull_hi(), 2.0);
    EXPECT_TRUE(s.gaps().empty());
}

TEST(IntervalUnion, TouchingIntervalsMerge) {
    const auto s = make_interval_union({1.0, 2.0, 2.0, 3.0});
    EXPECT_EQ(s.ell(), 1);
    EXPECT_EQ(s.interval(0).lo, 1.0);
    EXPECT_EQ(s.interval(0).hi, 3.0);
}

TEST(IntervalUnion, OverlapAndUnsortedInput) {
    const auto s = make_interval_union({5.0, 6.0, 1.0, 3.0, 2.0, 4.0});
    ASSERT_EQ(s.ell(), 2);
    EXPECT_EQ(s.interval(0).lo, 1.0);
    EXPECT_EQ(s.interval(0).hi, 4.0);
    EXPECT_EQ(s.interval(1).lo, 5.0);
}

TEST(IntervalUnion, MirroredPairHasOneGap) {
    const auto s = make_interval_union({kSqrt3, kSqrt7, -kSqrt7, -kSqrt3});
    ASSERT_EQ(s.ell(), 2);
    const auto g = s.gaps();
    ASSERT_EQ(g.size(), 1u);
    EXPECT_EQ(g[0].lo, -kSqrt3);
    EXPECT_EQ(g[0].hi, kSqrt3);

    // Independent check: the endpoints are the real solutions of (x^2-5)/2 = +-1.
    for (double target : {-1.0, 1.0}) {
        const double r = std::sqrt(5.0 + 2.0 * target);
        EXPECT_TRUE(s.contains(r));
        EXPECT_TRUE(s.contains(-r));
    }
}

TEST(IntervalUnion, Errors) {
    EXPECT_THROW(make_interval_union({1.0, 2.0, 3.0}), InvalidInput);
    EXPECT_THROW(make_interval_union(std::span<const double>{}), InvalidInput);
    EXPECT_THROW(make_interval_union({1.0, 1.0}), InvalidInput);
    EXPECT_THROW(make_interval_union({2.0, 1.0}), InvalidInput);
    EXPECT_THROW(make_interval_union({0.0, INFINITY}), InvalidInput);
    EXPECT_THROW(make_interval_union({NAN, 1.0}), InvalidInput);
}

TEST(IntervalUnion, Contains) {
    const auto s = make_interval_union({1.0, 2.0});
    EXPECT_TRUE(contains(s, 1.5));
    EXPECT_TRUE(contains(s, 1.0));
    EXPECT_TRUE(contains(s, 2.0));
    EXPECT_FALSE(contains(s, 2.5));
    EXPECT_FALSE(contains(two_interval_set(), 0.0));
    EXPECT_EQ(two_interval_set().gap_index(0.0), 0);
    EXPECT_EQ(two_interval_set().gap_index(3.0), -1);
}

TEST(IntervalUnion, IdempotentConstruction) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto s = random_set(rng, i % 2 == 0).set;
        const auto again = make_interval_union(s.endpoints());
        EXPECT_EQ(s, again);
    }
}

TEST(IntervalUnion, Scaling) {
    const auto s = two_interval_set().scaled(2.0);
    EXPECT_DOUBLE_EQ(s.hull_hi(), 2.0 * kSqrt7);
    EXPECT_THROW(two_interval_set().scaled(-1.0), InvalidInput);
}

TEST(Polynomial, EvalExamples) {
    EXPECT_DOUBLE_EQ(poly_eval(RealPolynomial::monomial({-1.0, 0.0, 2.0}), -3.0), 17.0);
    EXPECT_DOUBLE_EQ(poly_eval(RealPolynomial::constant(1.0), 123.0), 1.0);
    EXPECT_DOUBLE_EQ(poly_eval(half_x2_minus_5(), 0.0), -2.5);
    EXPECT_DOUBLE_EQ(poly_eval(chebyshev_t(2), -3.0), 17.0);
}

TEST(Polynomial, ChebyshevBasisMatchesRecurrence) {
    for (int n = 0; n <= 15; ++n) {
        const auto t = chebyshev_t(n, 1.0, 2.0);
        for (double x : {0.0, 1.1, 1.7, 2.5}) {
            const double u = 2.0 * x - 3.0;
            EXPECT_NEAR(t(x), chebyshev_t_value(n, u), 1e-11 * std::max(1.0, std::abs(chebyshev_t_value(n, u))));
        }
    }
}

TEST(Polynomial, TrimsNegligibleLeadingCoefficients) {
    const auto p = RealPolynomial::monomial({1.0, 2.0, 1e-14});
    EXPECT_EQ(p.degree(), 1);
    EXPECT_EQ(RealPolynomial::monomial({0.0, 0.0}).degree(), 0);
    EXPECT_TRUE(RealPolynomial::monomial({0.0, 0.0}).is_zero());
    EXPECT_THROW(RealPolynomial::monomial({1.0, NAN}), InvalidInput);
    EXPECT_THROW(RealPolynomial::chebyshev({1.0}, 2.0, 1.0), InvalidInput);
}

TEST(Polynomial, DerivativeExamples) {
    const auto d = poly_derivative(RealPolynomial::monomial({-5.0, 0.0, 1.0}));
    ASSERT_EQ(d.degree(), 1);
    EXPECT_DOUBLE_EQ(d.coeffs()[0], 0.0);
    EXPECT_DOUBLE_EQ(d.coeffs()[1], 2.0);

    const auto dc = poly_derivative(RealPolynomial::constant(4.0));
    EXPECT_EQ(dc.degree(), 0);
    EXPECT_TRUE(dc.is_zero());

    // 4x^3 - 3x has derivative 12x^2 - 3, which vanishes at 0.5.
    const auto t3 = chebyshev_t(3);
    EXPECT_NEAR(poly_derivative(t3)(0.5), 0.0, 1e-14);
    const double h = 1e-5;
    EXPECT_NEAR((t3(0.5 + h) - t3(0.5 - h)) / (2 * h), 0.0, 1e-9);
}

TEST(Polynomial, DerivativeMatchesFiniteDifferences) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_int_distribution<int> deg(0, 12);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> c(deg(rng) + 1);
        for (auto& v : c) v = unit(rng);
        for (const auto& p : {RealPolynomial::monomial(c), RealPolynomial::chebyshev(c, -2.0, 3.0)}) {
            const auto d = poly_derivative(p);
            for (int i = 0; i < 100; ++i) {
                const double x = p.basis() == Basis::monomial ? unit(rng) : 0.5 + 2.5 * unit(rng);
                const double h = 1e-5;
                // five-point stencil
                const double fd = (-p(x + 2 * h) + 8 * p(x + h) - 8 * p(x - h) + p(x - 2 * h)) / (12 * h);
                const double scale = std::max(1.0, std::abs(d(x)));
                EXPECT_NEAR(d(x), fd, 1e-6 * scale * (1.0 + p.coeff_norm()));
            }
        }
    }
}

TEST(Roots, Examples) {
    const auto r1 = real_roots_in(RealPolynomial::monomial({-5.0, 0.0, 1.0}), 0.0, 3.0);
    ASSERT_EQ(r1.size(), 1u);
    EXPECT_NEAR(r1[0].x, std::sqrt(5.0), 1e-12);

    const auto r2 = real_roots_in(RealPolynomial::monomial({-3.0, 2.0}), 0.0, 2.0);
    ASSERT_EQ(r2.size(), 1u);
    EXPECT_NEAR(r2[0].x, 1.5, 1e-12);

    const auto r3 = real_roots_in(chebyshev_t(3), -1.0, 1.0);
    ASSERT_EQ(r3.size(), 3u);
    for (int k = 0; k < 3; ++k) {
        EXPECT_NEAR(r3[k].x, std::cos((2 * (2 - k) + 1) * std::numbers::pi / 6), 1e-12);
        EXPECT_EQ(r3[k].multiplicity, 1);
    }
}

TEST(Roots, DoubleRootIsReportedOnce) {
    const auto r = real_roots_in(RealPolynomial::monomial({1.0, -2.0, 1.0}), -1.0, 3.0);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_NEAR(r[0].x, 1.0, 1e-6);
    EXPECT_EQ(r[0].multiplicity, 2);
}

TEST(Roots, Errors) {
    EXPECT_THROW(real_roots_in(chebyshev_t(2), 1.0, 1.0), InvalidInput);
    EXPECT_THROW(real_roots_in(RealPolynomial::constant(1.0), 0.0, 1.0), InvalidInput);
}

TEST(Roots, ResidualsAndSignChanges) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> c(2 + trial % 9);
        for (auto& v : c) v = unit(rng);
        const auto p = RealPolynomial::monomial(c);
        const auto roots = real_roots_in(p, -2.0, 2.0);
        double norm = 0.0;
        for (double v : c) norm += std::abs(v);
        for (const auto& r : roots) EXPECT_LE(std::abs(p(r.x)), 1e-9 * (1.0 + norm));
        for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
            const double mid = 0.5 * (roots[i].x + roots[i + 1].x);
            const double right = 0.5 * (roots[i + 1].x + (i + 2 < roots.size() ? roots[i + 2].x : 2.0));
            const bool flips = (p(mid) > 0) != (p(right) > 0);
            EXPECT_EQ(flips, roots[i + 1].multiplicity % 2 == 1);
        }
    }
}

TEST(Roots, AllRealRootsOfChebyshev) {
    const auto r = all_real_roots(chebyshev_t(7, 2.0, 5.0));
    ASSERT_EQ(r.size(), 7u);
    for (int k = 0; k < 7; ++k) {
        const double u = std::cos((2 * (6 - k) + 1) * std::numbers::pi / 14);
        EXPECT_NEAR(r[k].x, 3.5 + 1.5 * u, 1e-11);
    }
}

TEST(Polynomial, BasisRoundTrip) {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int n = 0; n <= 20; ++n) {
        std::vector<double> c(n + 1);
        for (auto& v : c) v = unit(rng);
        const auto cheb = RealPolynomial::chebyshev(c, -1.0, 1.0);
        const auto mono = to_monomial(cheb);
        const auto back = to_chebyshev(mono, -1.0, 1.0);
        const auto mono_c = RealPolynomial::monomial(c);
        const auto mono_back = to_monomial(to_chebyshev(mono_c, -1.0, 1.0));
        // Relative to the evaluation scale of the monomial form, sum_k |c_k| sum_i |t_ki| |x|^i
        // with T_k = sum_i t_ki x^i: the monomial representation cannot do better than that.
        auto scale_of = [&](double x) {
            double s = 0.0;
            for (int k = 0; k <= n; ++k) {
                const auto tk = to_monomial(chebyshev_t(k));
                double a = 0.0;
                for (std::size_t i = 0; i < tk.coeffs().size(); ++i) a += std::abs(tk.coeffs()[i]) * std::pow(std::abs(x), i);
                s += std::abs(c[k]) * a;
            }
            return std::max(s, 1.0);
        };
        for (int i = 0; i <= 50; ++i) {
            const double x = -1.0 + 2.0 * i / 50.0;
            EXPECT_NEAR(back(x), cheb(x), 1e-12 * scale_of(x)) << "n=" << n;
            double mono_scale = 1.0;
            for (int k = 0; k <= n; ++k) mono_scale += std::abs(c[k]) * std::pow(std::abs(x), k);
            EXPECT_NEAR(mono_back(x), mono_c(x), 1e-12 * mono_scale) << "n=" << n;
        }
    }
}

TEST(Polynomial, ToMonomialOfShiftedChebyshev) {
    // T_2 on [1,3] is 2(x-2)^2 - 1 = 2x^2 - 8x + 7.
    const auto m = to_monomial(chebyshev_t(2, 1.0, 3.0));
    ASSERT_EQ(m.degree(), 2);
    EXPECT_NEAR(m.coeffs()[0], 7.0, 1e-13);
    EXPECT_NEAR(m.coeffs()[1], -8.0, 1e-13);
    EXPECT_NEAR(m.coeffs()[2], 2.0, 1e-13);
}

TEST(Polynomial, EffectiveDegree) {
    EXPECT_EQ(effective_degree(RealPolynomial::monomial({1.0, 1.0, 1e-11}), 1e-9), 1);
    EXPECT_EQ(effective_degree(RealPolynomial::monomial({1.0, 1.0, 1e-3}), 1e-9), 2);
}

TEST(Io, IntervalUnionJsonRoundTrip) {
    const auto s = two_interval_set();
    const auto back = interval_union_from_json(parse_json_text(dump17(to_json(s))));
    EXPECT_EQ(s, back);
    EXPECT_THROW(interval_union_from_json(parse_json_text("{\"intervals\": [[1]]}")), InvalidInput);
    EXPECT_THROW(parse_json_text("{"), InvalidInput);
}

TEST(Io, PolynomialJsonRoundTrip) {
    const auto p = chebyshev_t(3, 1.0, 2.0).scaled(0.7);
    const auto q = polynomial_from_json(parse_json_text(dump17(to_json(p))));
    EXPECT_EQ(q.basis(), Basis::chebyshev);
    EXPECT_EQ(q.lo(), 1.0);
    EXPECT_EQ(q.hi(), 2.0);
    for (double x : {0.0, 1.3, 2.9}) EXPECT_EQ(q(x), p(x));
    EXPECT_THROW(polynomial_from_json(parse_json_text("{\"coeffs\": []}")), InvalidInput);
    EXPECT_THROW(polynomial_from_json(parse_json_text("{\"basis\":\"legendre\",\"coeffs\":[1]}")), InvalidInput);
}

TEST(Io, ParseSetInline) {
    const auto s = parse_set("1,2;3,4");
    EXPECT_EQ(s.ell(), 2);
    EXPECT_EQ(parse_set("{\"intervals\": [[1,2]]}"), make_interval_union({1.0, 2.0}));
    EXPECT_THROW(parse_set("1,2;3"), InvalidInput);
    EXPECT_THROW(parse_set("1,x"), InvalidInput);
    EXPECT_THROW(parse_set(""), InvalidInput);
    EXPECT_THROW(parse_set("@/nonexistent/set.json"), InvalidInput);
}

TEST(Io, Dump17KeepsFullPrecision) {
    const json j{{"v", 0.1}};
    const auto text = dump17(j);
    EXPECT_NE(text.find("0.10000000000000001"), std::string::npos);
    EXPECT_EQ(parse_json_text(text)["v"].get<double>(), 0.1);
}

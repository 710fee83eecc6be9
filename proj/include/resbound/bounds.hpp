#ifndef RESBOUND_BOUNDS_HPP
#define RESBOUND_BOUNDS_HPP

#include <cmath>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "green.hpp"
#include "interval_union.hpp"
#include "invimage.hpp"
#include "minres.hpp"
#include "polynomial.hpp"

namespace resbound {

enum class EqualityClass { equality, strict, undetermined };

inline const char* to_string(EqualityClass c) {
    switch (c) {
        case EqualityClass::equality: return "equality";
        case EqualityClass::strict: return "strict";
        case EqualityClass::undetermined: return "undetermined";
    }
    return "unknown";
}

/// kappa^n, the classical lower bound for L_n(S).
inline double lower_bound_classic(double kappa, int n) { return std::pow(kappa, n); }

/**
 * 2 kappa^n / (1 + kappa^{2n}), evaluated as 2/(kappa^{-n} + kappa^n).
 * Once n*log(1/kappa) exceeds 700 the kappa^n term is dropped and 2 kappa^n
 * is returned.
 */
inline double lower_bound_sharp(double kappa, int n) {
    if (!(kappa > 0.0 && kappa < 1.0)) throw InvalidInput("kappa must lie in (0, 1)");
    if (n < 0) throw InvalidInput("degree must be nonnegative");
    const double t = -n * std::log(kappa);
    if (t > 700.0) return 2.0 * std::exp(-t);
    return 1.0 / std::cosh(t);
}

struct EqualityDecision {
    EqualityClass cls = EqualityClass::undetermined;
    double endpoint_mismatch = 0.0;  // max |a_i - a~_i| / hull width, or +inf when the counts differ
    int effective_degree = 0;
};

inline constexpr double kEqualityTol = 1e-7;

/**
 * Decides whether S is the inverse image of a degree-n polynomial from a
 * solved minimal residual polynomial: the witness is R_n/L_n, and S is an
 * equality set exactly when that witness has degree n and its inverse
 * image reproduces S.
 */
inline EqualityDecision classify_equality(const IntervalUnion& s, const MinResResult& res, double tol = kEqualityTol) {
    EqualityDecision d;
    d.effective_degree = res.effective_degree;
    if (res.n == 0) {
        // L_0 = 1 = sharp bound at n = 0
        d.cls = EqualityClass::equality;
        return d;
    }
    if (res.effective_degree < res.n) {
        d.cls = EqualityClass::strict;
        d.endpoint_mismatch = INFINITY;
        return d;
    }
    const auto witness = res.polynomial.scaled(1.0 / res.deviation);
    const auto check = check_admissible(witness, tol);
    if (!check) {
        d.cls = EqualityClass::undetermined;
        d.endpoint_mismatch = INFINITY;
        return d;
    }
    IntervalUnion image;
    try {
        image = inverse_image(*check);
    } catch (const NumericFailure&) {
        d.cls = EqualityClass::undetermined;
        d.endpoint_mismatch = INFINITY;
        return d;
    }
    if (image.ell() != s.ell()) {
        d.endpoint_mismatch = INFINITY;
    } else {
        const auto a = s.endpoints();
        const auto b = image.endpoints();
        for (std::size_t i = 0; i < a.size(); ++i) {
            d.endpoint_mismatch = std::max(d.endpoint_mismatch, std::abs(a[i] - b[i]) / s.hull_width());
        }
    }
    if (d.endpoint_mismatch <= tol) {
        d.cls = EqualityClass::equality;
    } else if (d.endpoint_mismatch > 10.0 * tol) {
        d.cls = EqualityClass::strict;
    } else {
        d.cls = EqualityClass::undetermined;
    }
    return d;
}

inline EqualityDecision classify_equality(const IntervalUnion& s, int n, double tol = kEqualityTol) {
    return classify_equality(s, minres_exchange(s, n), tol);
}

/// cosh(n g(x)), the refined Bernstein-Walsh factor; 1 for x in K.
inline double bw_refined_bound(const GreenFunction& g, double x, int n) {
    if (g.set().contains(x)) return 1.0;
    return std::cosh(n * g(x));
}

inline double bw_refined_bound(const IntervalUnion& k, double x, int n, double quad_tol = kDefaultQuadTol) {
    return bw_refined_bound(GreenFunction(k, quad_tol), x, n);
}

struct BwCheck {
    double lhs = 0.0;          // |Q(x)| / ||Q||_K
    double rhs = 0.0;          // cosh(n g(x))
    double classic_rhs = 0.0;  // exp(n g(x))
    bool pass = false;
    bool refinement_strict = false;  // rhs < classic_rhs
    int degree = 0;
};

inline BwCheck bw_check(const GreenFunction& g, const RealPolynomial& q, double x, double tol = 1e-9) {
    const auto& k = g.set();
    if (k.contains(x)) throw InvalidInput("bw_check requires x outside K");
    if (q.is_zero()) throw InvalidInput("bw_check requires a nonzero polynomial");
    const double norm = sup_norm(q, k);
    if (!(norm > 0.0)) throw InvalidInput("polynomial vanishes on K");
    BwCheck out;
    out.degree = q.degree();
    const double gx = g(x);
    out.lhs = std::abs(q(x)) / norm;
    out.rhs = std::cosh(out.degree * gx);
    out.classic_rhs = std::exp(out.degree * gx);
    out.pass = out.lhs <= out.rhs + tol * std::max(1.0, out.rhs);
    out.refinement_strict = out.rhs < out.classic_rhs;
    return out;
}

inline BwCheck bw_check(const IntervalUnion& k, const RealPolynomial& q, double x, double tol = 1e-9,
                        double quad_tol = kDefaultQuadTol) {
    return bw_check(GreenFunction(k, quad_tol), q, x, tol);
}

struct BoundReport {
    int n = 0;
    double L = 0.0;
    double kappa = 0.0;
    double classic = 0.0;
    double sharp = 0.0;
    double ratio = 0.0;  // L / sharp
    EqualityClass equality = EqualityClass::undetermined;
    std::optional<bool> ln_next_equal;  // L_{n+1} == L_n
    bool certified = false;
    int effective_degree = 0;
};

inline BoundReport make_bound_report(const MinResResult& res, double kappa, const IntervalUnion& s,
                                     double tol = kEqualityTol) {
    BoundReport r;
    r.n = res.n;
    r.L = res.deviation;
    r.kappa = kappa;
    r.classic = lower_bound_classic(kappa, res.n);
    r.sharp = lower_bound_sharp(kappa, res.n);
    r.ratio = r.L / r.sharp;
    r.equality = classify_equality(s, res, tol).cls;
    r.certified = res.certified;
    r.effective_degree = res.effective_degree;
    return r;
}

/// One report row per degree 0..n_max, sharing a single kappa evaluation.
inline std::vector<BoundReport> compare_report(const IntervalUnion& s, int n_max, double quad_tol = kDefaultQuadTol,
                                               const MinResOptions& opts = {}) {
    if (n_max < 0) throw InvalidInput("n_max must be nonnegative");
    if (s.contains(0.0)) throw InvalidInput("report requires 0 outside S");
    const double k = kappa(s, quad_tol);
    std::vector<BoundReport> rows;
    for (int n = 0; n <= n_max; ++n) rows.push_back(make_bound_report(minres_exchange(s, n, opts), k, s));
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        rows[i].ln_next_equal = std::abs(rows[i + 1].L - rows[i].L) <= 1e-9 * rows[i].L;
    }
    return rows;
}

}

#endif

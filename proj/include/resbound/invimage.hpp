#ifndef RESBOUND_INVIMAGE_HPP
#define RESBOUND_INVIMAGE_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "interval_union.hpp"
#include "minres.hpp"
#include "polynomial.hpp"
#include "roots.hpp"

namespace resbound {

inline constexpr double kCriticalValueTol = 1e-10;

/**
 * A polynomial whose inverse image of [-1,1] is real: real coefficients,
 * n simple real zeros and |P(y)| >= 1 at every critical point y. The image
 * then consists of ell intervals, ell - 1 being the number of critical
 * values strictly above 1 in modulus.
 */
struct AdmissiblePolynomial {
    RealPolynomial poly;
    std::vector<double> critical_points;  // ascending, n-1 of them
    std::vector<double> critical_values;  // signed P(y)
    int ell = 1;
    double tol = kCriticalValueTol;

    int degree() const { return poly.degree(); }
};

enum class Rejection { none, degree_zero, critical_points_not_real, zeros_not_simple_real, critical_value_below_one };

struct AdmissibilityCheck {
    std::optional<AdmissiblePolynomial> admissible;
    Rejection reason = Rejection::none;
    std::string detail;

    explicit operator bool() const { return admissible.has_value(); }
    const AdmissiblePolynomial& operator*() const { return *admissible; }
    const AdmissiblePolynomial* operator->() const { return &*admissible; }
};

inline const char* to_string(Rejection r) {
    switch (r) {
        case Rejection::none: return "none";
        case Rejection::degree_zero: return "degree_zero";
        case Rejection::critical_points_not_real: return "critical_points_not_real";
        case Rejection::zeros_not_simple_real: return "zeros_not_simple_real";
        case Rejection::critical_value_below_one: return "critical_value_below_one";
    }
    return "unknown";
}

namespace detail {

inline int leading_sign(const RealPolynomial& p) { return p.coeffs()[p.degree()] > 0.0 ? 1 : -1; }

// Walks away from `anchor` (direction -1 or +1) until p has the sign it has
// at that infinity and |p| >= level.
inline double far_point(const RealPolynomial& p, double anchor, int direction, double scale, double level) {
    const int lead = leading_sign(p);
    const int tail = direction > 0 || p.degree() % 2 == 0 ? lead : -lead;
    double step = std::max(scale, 1e-12 * (1.0 + std::abs(anchor)));
    for (int i = 0; i < 2000; ++i) {
        const double x = anchor + direction * step;
        const double v = p(x);
        if (std::abs(v) >= level && (v > 0.0 ? 1 : -1) == tail) return x;
        step *= 2.0;
    }
    throw NumericFailure("could not bracket polynomial tail");
}

}

/// Verifies the real-inverse-image conditions; returns the annotated polynomial or a rejection.
inline AdmissibilityCheck check_admissible(const RealPolynomial& p, double tol = kCriticalValueTol) {
    AdmissibilityCheck out;
    const int n = p.degree();
    if (n < 1) {
        out.reason = Rejection::degree_zero;
        out.detail = "degree must be at least 1";
        return out;
    }
    AdmissiblePolynomial a;
    a.poly = p;
    a.tol = tol;
    if (n >= 2) {
        const auto dp = poly_derivative(p);
        const auto crit = all_real_roots(dp);
        for (const auto& r : crit) {
            if (r.multiplicity != 1) {
                out.reason = Rejection::critical_points_not_real;
                out.detail = "multiple critical point near " + std::to_string(r.x);
                return out;
            }
            a.critical_points.push_back(r.x);
            a.critical_values.push_back(p(r.x));
        }
        if (static_cast<int>(a.critical_points.size()) != n - 1) {
            out.reason = Rejection::critical_points_not_real;
            out.detail = "found " + std::to_string(a.critical_points.size()) + " real critical points, expected " +
                         std::to_string(n - 1);
            return out;
        }
    }
    for (std::size_t i = 0; i < a.critical_values.size(); ++i) {
        if (std::abs(a.critical_values[i]) < 1.0 - tol) {
            out.reason = Rejection::critical_value_below_one;
            out.detail = "|P(y)| = " + std::to_string(std::abs(a.critical_values[i])) + " at y = " +
                         std::to_string(a.critical_points[i]);
            return out;
        }
    }
    // n simple real zeros <=> the values at -inf, y_1, ..., y_{n-1}, +inf alternate in sign.
    std::vector<int> signs;
    const int lead = detail::leading_sign(p);
    signs.push_back(n % 2 == 0 ? lead : -lead);
    for (double v : a.critical_values) signs.push_back(v > 0.0 ? 1 : -1);
    signs.push_back(lead);
    for (std::size_t i = 0; i + 1 < signs.size(); ++i) {
        if (signs[i] == signs[i + 1]) {
            out.reason = Rejection::zeros_not_simple_real;
            out.detail = "fewer than " + std::to_string(n) + " real zeros";
            return out;
        }
    }
    a.ell = 1;
    for (double v : a.critical_values) {
        if (std::abs(v) > 1.0 + tol) ++a.ell;
    }
    out.admissible = std::move(a);
    return out;
}

/**
 * P^{-1}([-1,1]) as an interval union. Between consecutive critical points P
 * is monotone, so each of the n monotone branches contributes the interval
 * between its solutions of P = -1 and P = +1; branches meeting at a critical
 * value of modulus 1 are joined there.
 */
inline IntervalUnion inverse_image(const AdmissiblePolynomial& a) {
    const auto& p = a.poly;
    const auto& ys = a.critical_points;
    double anchor_lo = 0.0;
    double anchor_hi = 0.0;
    double scale = 1.0;
    if (ys.empty()) {
        const auto [lo, hi] = root_hull(p);
        anchor_lo = anchor_hi = 0.5 * (lo + hi);
        scale = std::max(hi - lo, 1e-6);
    } else {
        anchor_lo = ys.front();
        anchor_hi = ys.back();
        scale = std::max(anchor_hi - anchor_lo, 1e-3 * (1.0 + std::abs(anchor_lo)));
    }
    std::vector<double> bounds;
    bounds.push_back(detail::far_point(p, anchor_lo, -1, scale, 2.0));
    bounds.insert(bounds.end(), ys.begin(), ys.end());
    bounds.push_back(detail::far_point(p, anchor_hi, +1, scale, 2.0));

    auto touching = [&](std::size_t boundary) {
        // boundary index into `bounds`; only critical points can touch
        if (boundary == 0 || boundary + 1 == bounds.size()) return false;
        return std::abs(std::abs(a.critical_values[boundary - 1]) - 1.0) <= a.tol;
    };

    std::vector<double> raw;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        const double l = bounds[i];
        const double r = bounds[i + 1];
        double x1 = solve_monotone(p, l, r, -1.0);
        double x2 = solve_monotone(p, l, r, 1.0);
        double lo = std::min(x1, x2);
        double hi = std::max(x1, x2);
        if (touching(i)) lo = l;
        if (touching(i + 1)) hi = r;
        raw.push_back(lo);
        raw.push_back(hi);
    }
    auto s = make_interval_union(raw);
    if (s.ell() != a.ell) {
        throw NumericFailure("endpoint pairing produced " + std::to_string(s.ell()) + " intervals, expected " +
                             std::to_string(a.ell));
    }
    return s;
}

/// Green's function of the complement of P^{-1}([-1,1]) at real x: acosh(|P(x)|)/n, 0 inside the image.
inline double green_closed_form(const AdmissiblePolynomial& a, double x) {
    const double v = std::abs(a.poly(x));
    if (v <= 1.0) return 0.0;
    return std::acosh(v) / a.degree();
}

struct InvImageMinRes {
    MinResResult result;
    IntervalUnion image;
    bool next_degree_same = false;  // 0 in the hull of the image: L_{n+1} = L_n
};

/**
 * Exact minimal residual polynomial on A = P^{-1}([-1,1]) for degree n = deg P:
 * R = P/P(0) with L_n(A) = 1/|P(0)|.
 */
inline InvImageMinRes minres_from_invimage(const AdmissiblePolynomial& a) {
    InvImageMinRes out;
    out.image = inverse_image(a);
    if (out.image.contains(0.0)) throw InvalidInput("0 lies in the inverse image");
    const double p0 = a.poly(0.0);
    const int n = a.degree();
    auto& res = out.result;
    res.n = n;
    res.polynomial = to_chebyshev(a.poly.scaled(1.0 / p0), out.image.hull_lo(), out.image.hull_hi());
    res.deviation = 1.0 / std::abs(p0);
    res.levelled = res.deviation;
    res.effective_degree = n;
    res.converged = true;
    out.next_degree_same = out.image.hull_contains(0.0);

    // Reference: the first n+1 points of the alternation among the extrema.
    std::vector<double> xs;
    int last = 0;
    for (const auto& e : local_extrema(res.polynomial, out.image)) {
        if (std::abs(e.value) < res.deviation * (1.0 - 1e-8)) continue;
        const int es = (e.x > 0 ? 1 : -1) * (e.value > 0 ? 1 : -1);
        if (!xs.empty() && (e.x == xs.back() || es == last)) continue;
        xs.push_back(e.x);
        last = es;
        if (static_cast<int>(xs.size()) == n + 1) break;
    }
    if (static_cast<int>(xs.size()) == n + 1) {
        res.reference = sign_pattern(xs, res.polynomial(xs.front()) > 0 ? 1 : -1);
        for (double x : xs) {
            res.certificate_residual = std::max(res.certificate_residual, std::abs(std::abs(res.polynomial(x)) - res.deviation));
        }
    }
    res.certified = verify_alternation(res, out.image, 1e-8).pass;
    return out;
}

/// T_n composed with the affine map of [lo, hi] onto [-1, 1].
inline AdmissiblePolynomial chebyshev_generator(int n, double lo, double hi) {
    if (n < 1) throw InvalidInput("chebyshev_generator needs n >= 1");
    auto check = check_admissible(chebyshev_t(n, lo, hi));
    if (!check) throw NumericFailure("Chebyshev polynomial failed admissibility: " + check.detail);
    return *check;
}

/**
 * outer o inner, re-verified for admissibility. The composite is built by
 * Chebyshev interpolation on the hull of inner^{-1}(hull of outer's image).
 */
inline AdmissibilityCheck compose_generator(const AdmissiblePolynomial& outer, const AdmissiblePolynomial& inner,
                                            double tol = kCriticalValueTol) {
    const auto outer_image = inverse_image(outer);
    const double c1 = outer_image.hull_lo();
    const double c2 = outer_image.hull_hi();
    const auto& p = inner.poly;
    const auto& ys = inner.critical_points;
    const double level = 2.0 * std::max({std::abs(c1), std::abs(c2), 1.0});

    double anchor_lo = 0.0;
    double anchor_hi = 0.0;
    double scale = 1.0;
    if (ys.empty()) {
        const auto [lo, hi] = root_hull(p);
        anchor_lo = anchor_hi = 0.5 * (lo + hi);
        scale = std::max(hi - lo, 1e-6);
    } else {
        anchor_lo = ys.front();
        anchor_hi = ys.back();
        scale = std::max(anchor_hi - anchor_lo, 1e-3 * (1.0 + std::abs(anchor_lo)));
    }
    const double far_lo = detail::far_point(p, anchor_lo, -1, scale, level);
    const double far_hi = detail::far_point(p, anchor_hi, +1, scale, level);
    const double xl = std::min(solve_monotone(p, far_lo, anchor_lo, c1), solve_monotone(p, far_lo, anchor_lo, c2));
    const double xr = std::max(solve_monotone(p, anchor_hi, far_hi, c1), solve_monotone(p, anchor_hi, far_hi, c2));

    const int n = outer.degree() * inner.degree();
    auto composite = interpolate_chebyshev([&](double x) { return outer.poly(inner.poly(x)); }, n, xl, xr);
    return check_admissible(composite, tol);
}

}

#endif

#ifndef RESBOUND_ROOTS_HPP
#define RESBOUND_ROOTS_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/Polynomials>

#include "errors.hpp"
#include "polynomial.hpp"

namespace resbound {

struct RealRoot {
    double x;
    int multiplicity;
};

struct RootOptions {
    int samples_per_degree = 64;
    double x_tol = 1e-12;        // absolute, on the abscissa
    double touch_tol = 1e-10;    // |P| at an even-order touch, relative to the sampled max |P|
    double cluster_tol = 1e-9;   // relative to (hi - lo)
    int max_iter = 200;
};

namespace detail {

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Bisection on [a, b] where f(a) and f(b) have opposite signs.
template <class F>
double bisect(const F& f, double a, double b, double fa, double x_tol, int max_iter) {
    for (int it = 0; it < max_iter; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b || b - a <= x_tol) return m;
        const double fm = f(m);
        if (fm == 0.0) return m;
        if (sign_of(fm) == sign_of(fa)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    throw NumericFailure("root refinement did not converge");
}

// Golden-section minimisation of |f| on [a, b].
template <class F>
double argmin_abs(const F& f, double a, double b, int iters = 120) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - r * (b - a);
    double d = a + r * (b - a);
    double fc = std::abs(f(c));
    double fd = std::abs(f(d));
    for (int i = 0; i < iters && b - a > 1e-15 * (1.0 + std::abs(a)); ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = std::abs(f(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = std::abs(f(d));
        }
    }
    return 0.5 * (a + b);
}

}

/**
 * All real roots of p in [lo, hi], ascending.
 *
 * Sign changes on a Chebyshev-density scan are refined by bisection. Local
 * minima of |p| on the scan that come within touch_tol of zero are reported
 * as double roots. Roots closer than cluster_tol*(hi-lo) are merged and
 * their multiplicities added.
 */
inline std::vector<RealRoot> real_roots_in(const RealPolynomial& p, double lo, double hi, const RootOptions& opts = {}) {
    if (!(lo < hi)) throw InvalidInput("real_roots_in requires lo < hi");
    if (p.degree() < 1) throw InvalidInput("real_roots_in requires degree >= 1");

    const int n = std::max(8, opts.samples_per_degree * p.degree());
    std::vector<double> xs(n + 1);
    std::vector<double> vs(n + 1);
    double vmax = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double t = -std::cos(std::numbers::pi * i / n);
        xs[i] = i == 0 ? lo : (i == n ? hi : 0.5 * (lo + hi) + 0.5 * (hi - lo) * t);
        vs[i] = p(xs[i]);
        vmax = std::max(vmax, std::abs(vs[i]));
    }

    std::vector<RealRoot> roots;
    for (int i = 0; i <= n; ++i) {
        if (vs[i] == 0.0) {
            roots.push_back({xs[i], 1});
            continue;
        }
        if (i < n && vs[i + 1] != 0.0 && detail::sign_of(vs[i]) != detail::sign_of(vs[i + 1])) {
            roots.push_back({detail::bisect(p, xs[i], xs[i + 1], vs[i], opts.x_tol, opts.max_iter), 1});
        }
        if (i > 0 && i < n) {
            const bool local_min = std::abs(vs[i]) <= std::abs(vs[i - 1]) && std::abs(vs[i]) <= std::abs(vs[i + 1]);
            const bool same_sign = detail::sign_of(vs[i - 1]) == detail::sign_of(vs[i]) &&
                                   detail::sign_of(vs[i]) == detail::sign_of(vs[i + 1]);
            if (local_min && same_sign) {
                const double xm = detail::argmin_abs(p, xs[i - 1], xs[i + 1]);
                if (std::abs(p(xm)) <= opts.touch_tol * vmax) roots.push_back({xm, 2});
            }
        }
    }
    std::sort(roots.begin(), roots.end(), [](const RealRoot& a, const RealRoot& b) { return a.x < b.x; });

    std::vector<RealRoot> merged;
    const double ctol = opts.cluster_tol * (hi - lo);
    for (const auto& r : roots) {
        if (!merged.empty() && r.x - merged.back().x <= ctol) {
            auto& m = merged.back();
            // keep the better-resolved abscissa
            if (std::abs(p(r.x)) < std::abs(p(m.x))) m.x = r.x;
            m.multiplicity += r.multiplicity;
        } else {
            merged.push_back(r);
        }
    }
    return merged;
}

/**
 * An interval [lo, hi] containing the real parts of all complex roots of p,
 * obtained from the eigenvalues of the companion matrix in p's reference
 * variable. Used only to localise the sign-change scan.
 */
inline std::pair<double, double> root_hull(const RealPolynomial& p) {
    if (p.degree() < 1) throw InvalidInput("root_hull requires degree >= 1");
    const auto c = reference_monomial_coeffs(p);
    Eigen::VectorXd coeffs(static_cast<Eigen::Index>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) coeffs[static_cast<Eigen::Index>(i)] = c[i];
    // Trim a leading coefficient lost to cancellation in the basis change.
    Eigen::Index deg = coeffs.size() - 1;
    while (deg > 1 && std::abs(coeffs[deg]) <= 1e-14 * coeffs.cwiseAbs().maxCoeff()) --deg;
    double tlo = 0.0;
    double thi = 0.0;
    if (deg == 1) {
        tlo = thi = -coeffs[0] / coeffs[1];
    } else {
        Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
        solver.compute(coeffs.head(deg + 1));
        const auto& r = solver.roots();
        tlo = thi = r[0].real();
        for (Eigen::Index i = 0; i < r.size(); ++i) {
            tlo = std::min(tlo, r[i].real());
            thi = std::max(thi, r[i].real());
        }
    }
    const double pad = 0.05 * (thi - tlo) + 1e-3 * (1.0 + std::max(std::abs(tlo), std::abs(thi)));
    tlo -= pad;
    thi += pad;
    if (p.basis() == Basis::monomial) return {tlo, thi};
    const double mid = 0.5 * (p.lo() + p.hi());
    const double half = 0.5 * (p.hi() - p.lo());
    return {mid + half * tlo, mid + half * thi};
}

/// All real roots of p on the whole line (see root_hull / real_roots_in).
inline std::vector<RealRoot> all_real_roots(const RealPolynomial& p, const RootOptions& opts = {}) {
    const auto [lo, hi] = root_hull(p);
    RootOptions dense = opts;
    dense.samples_per_degree = std::max(opts.samples_per_degree, 256);
    return real_roots_in(p, lo, hi, dense);
}

/// Solves p(x) = target on [a, b] where p is monotone; clamps to the nearer end when target is not bracketed.
inline double solve_monotone(const RealPolynomial& p, double a, double b, double target, double x_tol = 0.0) {
    auto f = [&](double x) { return p(x) - target; };
    const double fa = f(a);
    const double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (detail::sign_of(fa) == detail::sign_of(fb)) return std::abs(fa) < std::abs(fb) ? a : b;
    return detail::bisect(f, a, b, fa, x_tol, 400);
}

}

#endif

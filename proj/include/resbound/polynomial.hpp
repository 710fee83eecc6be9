#ifndef RESBOUND_POLYNOMIAL_HPP
#define RESBOUND_POLYNOMIAL_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace resbound {

enum class Basis { monomial, chebyshev };

/// Trailing coefficients at or below this fraction of max|c| are treated as zero.
inline constexpr double kCoeffZeroTol = 1e-12;

/**
 * Real polynomial stored either in the monomial basis or in the Chebyshev
 * basis T_k((2x - lo - hi)/(hi - lo)) of a reference interval [lo, hi].
 *
 * The degree is the index of the last coefficient above kCoeffZeroTol
 * relative to the coefficient norm; the zero polynomial has degree 0.
 */
class RealPolynomial {
public:
    RealPolynomial() : coeffs_{0.0} {}

    static RealPolynomial monomial(std::vector<double> coeffs) {
        return RealPolynomial(Basis::monomial, -1.0, 1.0, std::move(coeffs));
    }

    static RealPolynomial chebyshev(std::vector<double> coeffs, double lo, double hi) {
        if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
            throw InvalidInput("Chebyshev reference interval must satisfy lo < hi");
        }
        return RealPolynomial(Basis::chebyshev, lo, hi, std::move(coeffs));
    }

    static RealPolynomial constant(double c) { return monomial({c}); }

    Basis basis() const { return basis_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    std::span<const double> coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }

    double coeff_norm() const {
        double m = 0.0;
        for (double c : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

    /// Maps x into the reference variable t of the Chebyshev basis (identity for monomials).
    double to_reference(double x) const {
        if (basis_ == Basis::monomial) return x;
        return (2.0 * x - lo_ - hi_) / (hi_ - lo_);
    }

    double operator()(double x) const {
        if (basis_ == Basis::monomial) {
            double y = 0.0;
            for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) y = y * x + *it;
            return y;
        }
        // Clenshaw
        const double t = to_reference(x);
        double b1 = 0.0;
        double b2 = 0.0;
        for (int k = degree(); k >= 1; --k) {
            const double b0 = 2.0 * t * b1 - b2 + coeffs_[k];
            b2 = b1;
            b1 = b0;
        }
        return t * b1 - b2 + coeffs_[0];
    }

    RealPolynomial scaled(double factor) const {
        auto c = coeffs_;
        for (auto& v : c) v *= factor;
        return RealPolynomial(basis_, lo_, hi_, std::move(c));
    }

    RealPolynomial negated() const { return scaled(-1.0); }

    /// Same polynomial plus a constant.
    RealPolynomial shifted(double offset) const {
        auto c = coeffs_;
        c[0] += offset;
        return RealPolynomial(basis_, lo_, hi_, std::move(c));
    }

private:
    RealPolynomial(Basis basis, double lo, double hi, std::vector<double> coeffs)
        : basis_(basis), lo_(lo), hi_(hi), coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.push_back(0.0);
        for (double c : coeffs_) {
            if (!std::isfinite(c)) throw InvalidInput("polynomial coefficients must be finite");
        }
        const double cut = kCoeffZeroTol * coeff_norm();
        while (coeffs_.size() > 1 && std::abs(coeffs_.back()) <= cut) coeffs_.pop_back();
        if (coeffs_.size() == 1 && coeff_norm() == 0.0) coeffs_[0] = 0.0;
    }

    Basis basis_ = Basis::monomial;
    double lo_ = -1.0;
    double hi_ = 1.0;
    std::vector<double> coeffs_;
};

inline double poly_eval(const RealPolynomial& p, double x) { return p(x); }

/// Exact coefficient-wise derivative in the polynomial's own basis.
inline RealPolynomial poly_derivative(const RealPolynomial& p) {
    const int n = p.degree();
    if (n == 0) {
        return p.basis() == Basis::monomial ? RealPolynomial::monomial({0.0})
                                            : RealPolynomial::chebyshev({0.0}, p.lo(), p.hi());
    }
    const auto c = p.coeffs();
    if (p.basis() == Basis::monomial) {
        std::vector<double> d(n);
        for (int k = 1; k <= n; ++k) d[k - 1] = k * c[k];
        return RealPolynomial::monomial(std::move(d));
    }
    // c'_{k-1} = c'_{k+1} + 2k c_k, then halve c'_0; chain rule for the affine map.
    std::vector<double> d(n + 1, 0.0);
    for (int k = n; k >= 1; --k) d[k - 1] = (k + 1 <= n ? d[k + 1] : 0.0) + 2.0 * k * c[k];
    d[0] *= 0.5;
    d.pop_back();
    const double chain = 2.0 / (p.hi() - p.lo());
    for (auto& v : d) v *= chain;
    return RealPolynomial::chebyshev(std::move(d), p.lo(), p.hi());
}

/// Chebyshev coefficients on [lo, hi] of the degree-n interpolant of f at Chebyshev-Gauss nodes.
inline RealPolynomial interpolate_chebyshev(const std::function<double(double)>& f, int n, double lo, double hi) {
    if (n < 0) throw InvalidInput("interpolation degree must be nonnegative");
    const int m = n + 1;
    std::vector<double> theta(m);
    std::vector<double> values(m);
    for (int k = 0; k < m; ++k) {
        theta[k] = std::numbers::pi * (k + 0.5) / m;
        const double t = std::cos(theta[k]);
        values[k] = f(0.5 * (lo + hi) + 0.5 * (hi - lo) * t);
    }
    std::vector<double> c(m, 0.0);
    for (int j = 0; j < m; ++j) {
        double s = 0.0;
        for (int k = 0; k < m; ++k) s += values[k] * std::cos(j * theta[k]);
        c[j] = 2.0 * s / m;
    }
    c[0] *= 0.5;
    return RealPolynomial::chebyshev(std::move(c), lo, hi);
}

/// Re-expresses p in the Chebyshev basis of [lo, hi].
inline RealPolynomial to_chebyshev(const RealPolynomial& p, double lo, double hi) {
    if (p.basis() == Basis::chebyshev && p.lo() == lo && p.hi() == hi) return p;
    return interpolate_chebyshev([&p](double x) { return p(x); }, p.degree(), lo, hi);
}

namespace detail {

// out = a*x + b applied to a monomial polynomial in place: returns q(x) = p(a*x + b).
inline std::vector<double> compose_affine(std::span<const double> p, double a, double b) {
    std::vector<double> out{0.0};
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        // out = out * (a x + b) + c
        std::vector<double> next(out.size() + 1, 0.0);
        for (std::size_t k = 0; k < out.size(); ++k) {
            next[k] += b * out[k];
            next[k + 1] += a * out[k];
        }
        next[0] += *it;
        out = std::move(next);
    }
    return out;
}

}

/// Re-expresses p in the monomial basis of x.
inline RealPolynomial to_monomial(const RealPolynomial& p) {
    if (p.basis() == Basis::monomial) return p;
    const auto c = p.coeffs();
    const int n = p.degree();
    // Sum c_k T_k(t) as a monomial polynomial in t.
    std::vector<double> sum(n + 1, 0.0);
    std::vector<double> tkm1{1.0};
    std::vector<double> tk{0.0, 1.0};
    sum[0] += c[0];
    if (n >= 1) sum[1] += c[1];
    for (int k = 2; k <= n; ++k) {
        std::vector<double> next(k + 1, 0.0);
        for (std::size_t i = 0; i < tk.size(); ++i) next[i + 1] += 2.0 * tk[i];
        for (std::size_t i = 0; i < tkm1.size(); ++i) next[i] -= tkm1[i];
        for (int i = 0; i <= k; ++i) sum[i] += c[k] * next[i];
        tkm1 = std::move(tk);
        tk = std::move(next);
    }
    const double a = 2.0 / (p.hi() - p.lo());
    const double b = -(p.hi() + p.lo()) / (p.hi() - p.lo());
    return RealPolynomial::monomial(detail::compose_affine(sum, a, b));
}

/// The polynomial expressed as a monomial polynomial in its reference variable t.
inline std::vector<double> reference_monomial_coeffs(const RealPolynomial& p) {
    if (p.basis() == Basis::monomial) return {p.coeffs().begin(), p.coeffs().end()};
    auto as_unit = RealPolynomial::chebyshev({p.coeffs().begin(), p.coeffs().end()}, -1.0, 1.0);
    auto m = to_monomial(as_unit);
    return {m.coeffs().begin(), m.coeffs().end()};
}

/**
 * Degree after discarding a leading coefficient that is negligible relative
 * to the coefficient norm (in the polynomial's own basis).
 */
inline int effective_degree(const RealPolynomial& p, double rel_tol) {
    const auto c = p.coeffs();
    const double cut = rel_tol * p.coeff_norm();
    int d = p.degree();
    while (d > 0 && std::abs(c[d]) <= cut) --d;
    return d;
}

/// T_n as a polynomial in the Chebyshev basis of [lo, hi], i.e. T_n of the affine map [lo,hi] -> [-1,1].
inline RealPolynomial chebyshev_t(int n, double lo = -1.0, double hi = 1.0) {
    std::vector<double> c(n + 1, 0.0);
    c[n] = 1.0;
    return RealPolynomial::chebyshev(std::move(c), lo, hi);
}

}

#endif

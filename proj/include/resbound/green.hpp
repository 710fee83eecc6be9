#ifndef RESBOUND_GREEN_HPP
#define RESBOUND_GREEN_HPP

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "errors.hpp"
#include "interval_union.hpp"
#include "polynomial.hpp"
#include "roots.hpp"

namespace resbound {

inline constexpr double kDefaultQuadTol = 1e-12;

/**
 * Data of the Green's function derivative g'(t) = q(t)/sqrt|H(t)| on the real
 * line, with H(t) = prod_i (t - a_i) and q monic of degree l-1 having one zero
 * in each gap. The gap zeros are fixed by requiring that q/sqrt|H| integrates
 * to zero across every gap, which makes g vanish on all of S.
 */
struct GapPolynomial {
    RealPolynomial q;                 // monic in t, stored in the Chebyshev basis of the hull
    std::vector<double> gap_zeros;    // one per gap, ascending
    std::vector<double> h_endpoints;  // a_1 .. a_{2l}
    double quad_tol = 0.0;            // max |gap integral| achieved, in hull-normalised units
};

enum class Location { in_set, in_gap, left_of_hull, right_of_hull };

struct GreenEvaluation {
    double x = 0.0;
    double value = 0.0;
    Location location = Location::in_set;
    int gap = -1;  // gap index when location == in_gap
    double est_error = 0.0;
};

namespace detail {

struct Quadrature {
    double value = 0.0;
    double error = 0.0;
};

template <class F>
Quadrature integrate(const F& f, double a, double b, double tol) {
    if (a == b) return {};
    double error = 0.0;
    double l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 15, tol, &error, &l1);
    if (!std::isfinite(v) || error > 1e3 * tol * std::max(1.0, l1)) {
        throw NumericFailure("quadrature did not converge (error estimate " + std::to_string(error) + ")");
    }
    return {v, error};
}

}

/**
 * Green's function of the complement of an interval union with pole at
 * infinity, evaluated at real points. The gap polynomial is computed once at
 * construction; evaluation is const and thread-safe.
 *
 * Internally everything runs in the hull-normalised variable
 * u = (t - c)/h, c the hull centre and h its half-width; the differential
 * q(t)/sqrt|H(t)| dt is invariant under that change of variable.
 */
class GreenFunction {
public:
    explicit GreenFunction(const IntervalUnion& s, double quad_tol = kDefaultQuadTol)
        : set_(s), quad_tol_(quad_tol) {
        if (!(quad_tol > 0.0)) throw InvalidInput("quad_tol must be positive");
        centre_ = 0.5 * (s.hull_lo() + s.hull_hi());
        half_ = 0.5 * s.hull_width();
        for (double a : s.endpoints()) u_.push_back((a - centre_) / half_);
        u_.front() = -1.0;
        u_.back() = 1.0;
        build_gap_polynomial();
    }

    const IntervalUnion& set() const { return set_; }
    const GapPolynomial& gap_polynomial() const { return gap_; }

    GreenEvaluation evaluate(double x) const {
        if (!std::isfinite(x)) throw InvalidInput("Green's function argument must be finite");
        GreenEvaluation out;
        out.x = x;
        if (set_.contains(x)) return out;

        const double xu = (x - centre_) / half_;
        const int last = static_cast<int>(u_.size()) - 1;
        int from = 0;
        if (x < set_.hull_lo()) {
            out.location = Location::left_of_hull;
            from = 0;
        } else if (x > set_.hull_hi()) {
            out.location = Location::right_of_hull;
            from = last;
        } else {
            out.location = Location::in_gap;
            out.gap = set_.gap_index(x);
            const int left = 2 * out.gap + 1;
            from = (xu - u_[left] <= u_[left + 1] - xu) ? left : left + 1;
        }
        const auto r = integrate_from_endpoint(from, xu);
        out.value = std::abs(r.value);
        out.est_error = r.error;
        return out;
    }

    double operator()(double x) const { return evaluate(x).value; }

private:
    double q_scaled(double u) const {
        // Clenshaw on [-1,1]
        const auto& c = q_cheb_;
        double b1 = 0.0;
        double b2 = 0.0;
        for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) {
            const double b0 = 2.0 * u * b1 - b2 + c[k];
            b2 = b1;
            b1 = b0;
        }
        return u * b1 - b2 + c[0];
    }

    // prod_{i not in {skip1, skip2}} |u - u_i|
    double rest(double u, int skip1, int skip2) const {
        double p = 1.0;
        for (int i = 0; i < static_cast<int>(u_.size()); ++i) {
            if (i == skip1 || i == skip2) continue;
            p *= std::abs(u - u_[i]);
        }
        return p;
    }

    // int over gap j of f(u)/sqrt|H(u)| du, via u = m - r cos(theta).
    template <class F>
    detail::Quadrature gap_integral(int j, const F& f) const {
        const int ia = 2 * j + 1;
        const int ib = ia + 1;
        const double m = 0.5 * (u_[ia] + u_[ib]);
        const double r = 0.5 * (u_[ib] - u_[ia]);
        auto integrand = [&](double theta) {
            const double u = m - r * std::cos(theta);
            return f(u) / std::sqrt(rest(u, ia, ib));
        };
        return detail::integrate(integrand, 0.0, std::numbers::pi, quad_tol_);
    }

    // int from endpoint u_e to target of q(u)/sqrt|H(u)| du, via u = u_e + sigma s^2.
    detail::Quadrature integrate_from_endpoint(int e, double target) const {
        const double ue = u_[e];
        const double sigma = target > ue ? 1.0 : -1.0;
        const double s_end = std::sqrt(std::abs(target - ue));
        auto integrand = [&](double s) {
            const double u = ue + sigma * s * s;
            return 2.0 * sigma * q_scaled(u) / std::sqrt(rest(u, e, -1));
        };
        detail::Quadrature total;
        double a = 0.0;
        double b = std::min(s_end, 1.0);
        while (true) {
            const auto piece = detail::integrate(integrand, a, b, quad_tol_);
            total.value += piece.value;
            total.error += piece.error;
            if (b >= s_end) break;
            a = b;
            b = std::min(s_end, 2.0 * b);
        }
        return total;
    }

    void build_gap_polynomial() {
        const int ell = set_.ell();
        const int m = ell - 1;
        // Chebyshev coefficients of u^m on [-1,1]
        auto lead = interpolate_chebyshev([m](double u) { return std::pow(u, m); }, m, -1.0, 1.0);
        q_cheb_.assign(m + 1, 0.0);
        for (int k = 0; k <= lead.degree(); ++k) q_cheb_[k] = lead.coeffs()[k];

        if (m > 0) {
            Eigen::MatrixXd a(m, m);
            Eigen::VectorXd rhs(m);
            for (int j = 0; j < m; ++j) {
                for (int k = 0; k < m; ++k) {
                    a(j, k) = gap_integral(j, [k](double u) { return std::cos(k * std::acos(std::clamp(u, -1.0, 1.0))); }).value;
                }
                rhs(j) = -gap_integral(j, [m](double u) { return std::pow(u, m); }).value;
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
            if (!lu.isInvertible() || lu.rcond() < 1e-14) {
                throw NumericFailure("gap polynomial system is numerically singular");
            }
            const Eigen::VectorXd b = lu.solve(rhs);
            for (int k = 0; k < m; ++k) q_cheb_[k] += b(k);
        }

        // q(t) = h^m q_scaled((t - c)/h): Chebyshev basis on the hull, monic in t.
        const double scale = std::pow(half_, m);
        std::vector<double> qc(q_cheb_);
        for (auto& v : qc) v *= scale;
        gap_.q = RealPolynomial::chebyshev(qc, set_.hull_lo(), set_.hull_hi());
        gap_.h_endpoints.assign(set_.endpoints().begin(), set_.endpoints().end());

        double worst = 0.0;
        for (int j = 0; j < m; ++j) {
            const auto res = gap_integral(j, [this](double u) { return q_scaled(u); });
            worst = std::max(worst, std::abs(res.value) + res.error);
            const double ua = u_[2 * j + 1];
            const double ub = u_[2 * j + 2];
            const double qa = q_scaled(ua);
            const double qb = q_scaled(ub);
            if (!(qa * qb < 0.0)) {
                throw NumericFailure("gap polynomial has no sign change in gap " + std::to_string(j));
            }
            auto f = [this](double u) { return q_scaled(u); };
            const double z = detail::bisect(f, ua, ub, qa, 0.0, 400);
            gap_.gap_zeros.push_back(centre_ + half_ * z);
        }
        gap_.quad_tol = worst;
    }

    IntervalUnion set_;
    double quad_tol_;
    double centre_ = 0.0;
    double half_ = 1.0;
    std::vector<double> u_;
    std::vector<double> q_cheb_;
    GapPolynomial gap_;
};

inline GapPolynomial gap_polynomial(const IntervalUnion& s, double quad_tol = kDefaultQuadTol) {
    return GreenFunction(s, quad_tol).gap_polynomial();
}

inline GreenEvaluation green_value(const IntervalUnion& s, double x, double quad_tol = kDefaultQuadTol) {
    return GreenFunction(s, quad_tol).evaluate(x);
}

/// exp(-g(0; complement of S)); requires 0 outside S.
inline double kappa(const GreenFunction& g) {
    if (g.set().contains(0.0)) throw InvalidInput("kappa requires 0 outside S");
    return std::exp(-g(0.0));
}

inline double kappa(const IntervalUnion& s, double quad_tol = kDefaultQuadTol) {
    if (s.contains(0.0)) throw InvalidInput("kappa requires 0 outside S");
    return kappa(GreenFunction(s, quad_tol));
}

}

#endif

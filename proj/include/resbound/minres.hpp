#ifndef RESBOUND_MINRES_HPP
#define RESBOUND_MINRES_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "interval_union.hpp"
#include "polynomial.hpp"
#include "roots.hpp"

namespace resbound {

/**
 * Reference points x_0 < ... < x_n together with the alternation pattern
 * R(x_j) = sigma_j * lambda. delta_j = 1 exactly when 0 lies between x_j and
 * x_{j+1}; there the sign repeats, everywhere else it alternates.
 */
struct ReferenceSet {
    std::vector<double> points;
    std::vector<int> deltas;
    std::vector<int> sigmas;
};

struct Extremum {
    double x;
    double value;  // signed R(x)
};

struct MinResOptions {
    double tol = 1e-10;      // stop when (||R||_S - lambda)/lambda <= tol
    int max_iter = 100;
    double degree_tol = 1e-9;  // leading-coefficient test for the effective degree
    double certify_tol = 1e-8;
};

struct MinResResult {
    int n = 0;
    RealPolynomial polynomial;     // R_n with R_n(0) = 1, Chebyshev basis of the hull
    double deviation = 0.0;        // ||R_n||_S, an upper bound for L_n(S)
    double levelled = 0.0;         // levelled reference error, a lower bound for L_n(S)
    ReferenceSet reference;
    int effective_degree = 0;
    int iterations = 0;
    double certificate_residual = 0.0;  // max_j | |R(x_j)| - deviation |
    bool converged = false;
    bool certified = false;
};

struct LevelledSolution {
    RealPolynomial poly;
    double lambda = 0.0;
    double rcond = 0.0;
    ReferenceSet reference;  // sigmas possibly flipped so that lambda > 0
};

struct AlternationCertificate {
    bool pass = false;
    std::vector<double> witnesses;
    double sup_norm = 0.0;
    std::string reason;
};

/// Deltas and sigmas for the given reference points (sigma_0 = sigma0).
inline ReferenceSet sign_pattern(std::span<const double> points, int sigma0 = 1) {
    ReferenceSet ref;
    ref.points.assign(points.begin(), points.end());
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (points[j] == 0.0) throw InvalidInput("reference point at 0");
        if (j > 0 && !(points[j] > points[j - 1])) throw InvalidInput("reference points must be strictly increasing");
    }
    if (points.empty()) return ref;
    ref.sigmas.push_back(sigma0 >= 0 ? 1 : -1);
    for (std::size_t j = 0; j + 1 < points.size(); ++j) {
        const int delta = (points[j] < 0.0 && points[j + 1] > 0.0) ? 1 : 0;
        ref.deltas.push_back(delta);
        ref.sigmas.push_back(delta == 1 ? ref.sigmas.back() : -ref.sigmas.back());
    }
    return ref;
}

/**
 * The (R, lambda) with R(0) = 1, deg R <= n and R(x_j) = sigma_j * lambda,
 * solved in the Chebyshev basis of the hull of S.
 */
inline LevelledSolution solve_reference(const IntervalUnion& s, int n, const ReferenceSet& ref) {
    if (n < 0) throw InvalidInput("degree must be nonnegative");
    if (static_cast<int>(ref.points.size()) != n + 1) throw InvalidInput("reference needs n+1 points");
    const double lo = s.hull_lo();
    const double hi = s.hull_hi();
    auto to_u = [&](double x) { return (2.0 * x - lo - hi) / (hi - lo); };
    auto cheb_row = [&](double u, Eigen::Ref<Eigen::RowVectorXd> row) {
        row(0) = 1.0;
        if (n >= 1) row(1) = u;
        for (int k = 2; k <= n; ++k) row(k) = 2.0 * u * row(k - 1) - row(k - 2);
    };

    const int dim = n + 2;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
    for (int j = 0; j <= n; ++j) {
        Eigen::RowVectorXd row(n + 1);
        cheb_row(to_u(ref.points[j]), row);
        a.block(j, 0, 1, n + 1) = row;
        a(j, n + 1) = -ref.sigmas[j];
    }
    Eigen::RowVectorXd zero_row(n + 1);
    cheb_row(to_u(0.0), zero_row);
    const double row_scale = zero_row.cwiseAbs().maxCoeff();
    a.block(n + 1, 0, 1, n + 1) = zero_row / row_scale;
    rhs(n + 1) = 1.0 / row_scale;

    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    const double rcond = lu.rcond();
    if (!lu.isInvertible() || !(rcond > 1e-16)) {
        throw NumericFailure("reference system numerically singular (rcond " + std::to_string(rcond) + ")");
    }
    const Eigen::VectorXd sol = lu.solve(rhs);

    std::vector<double> c(sol.data(), sol.data() + n + 1);
    auto poly = RealPolynomial::chebyshev(c, lo, hi);
    double lambda = sol(n + 1);
    const double at_zero = poly(0.0);
    poly = poly.scaled(1.0 / at_zero);
    lambda /= at_zero;

    LevelledSolution out{poly, lambda, rcond, ref};
    if (lambda < 0.0) {
        out.lambda = -lambda;
        for (auto& sg : out.reference.sigmas) sg = -sg;
    }
    return out;
}

/// Interval endpoints and interior critical points of R on S, ascending, with signed values.
inline std::vector<Extremum> local_extrema(const RealPolynomial& r, const IntervalUnion& s) {
    std::vector<Extremum> out;
    const auto dr = poly_derivative(r);
    for (const auto& iv : s.intervals()) {
        out.push_back({iv.lo, r(iv.lo)});
        if (dr.degree() >= 1) {
            for (const auto& root : real_roots_in(dr, iv.lo, iv.hi)) {
                if (root.x > iv.lo && root.x < iv.hi) out.push_back({root.x, r(root.x)});
            }
        }
        out.push_back({iv.hi, r(iv.hi)});
    }
    return out;
}

inline double sup_norm(const RealPolynomial& r, const IntervalUnion& s) {
    double m = 0.0;
    for (const auto& e : local_extrema(r, s)) m = std::max(m, std::abs(e.value));
    return m;
}

namespace detail {

inline int sgn(double v) { return v >= 0.0 ? 1 : -1; }

// n+1 starting points: Chebyshev points spread over the intervals in
// proportion to their lengths.
inline std::vector<double> initial_reference(const IntervalUnion& s, int n) {
    const int total = n + 1;
    const int ell = s.ell();
    std::vector<int> counts(ell, 0);
    std::vector<int> order(ell);
    for (int j = 0; j < ell; ++j) order[j] = j;
    auto length = [&](int j) { return s.interval(j).hi - s.interval(j).lo; };
    if (total < ell) {
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return length(a) > length(b); });
        for (int i = 0; i < total; ++i) counts[order[i]] = 1;
    } else {
        const int extra = total - ell;
        const double len = s.total_length();
        std::vector<double> remainder(ell);
        int used = 0;
        for (int j = 0; j < ell; ++j) {
            const double share = extra * length(j) / len;
            counts[j] = 1 + static_cast<int>(std::floor(share));
            remainder[j] = share - std::floor(share);
            used += counts[j] - 1;
        }
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return remainder[a] > remainder[b]; });
        for (int i = 0; used < extra; ++i, ++used) counts[order[i % ell]] += 1;
    }
    std::vector<double> pts;
    for (int j = 0; j < ell; ++j) {
        const auto iv = s.interval(j);
        const int k = counts[j];
        if (k == 1) {
            pts.push_back(0.5 * (iv.lo + iv.hi));
        } else {
            for (int i = 0; i < k; ++i) {
                pts.push_back(iv.lo + (iv.hi - iv.lo) * 0.5 * (1.0 - std::cos(std::numbers::pi * i / (k - 1))));
            }
        }
    }
    return pts;
}

struct Candidate {
    double x;
    double e;  // sign(x) * R(x): alternates on an optimal reference
};

// Multi-point exchange: alternating (in e) selection of `count` candidates
// with |e| >= floor that contains the global maximum. Empty on failure.
inline std::vector<double> select_alternating(std::vector<Candidate> cands, int count, double floor) {
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.x < b.x; });
    std::vector<Candidate> runs;
    for (const auto& c : cands) {
        if (std::abs(c.e) < floor) continue;
        if (!runs.empty() && sgn(runs.back().e) == sgn(c.e)) {
            if (std::abs(c.e) > std::abs(runs.back().e)) runs.back() = c;
        } else {
            runs.push_back(c);
        }
    }
    if (static_cast<int>(runs.size()) < count) return {};
    std::size_t first = 0;
    std::size_t last = runs.size();  // exclusive
    auto max_idx = [&]() {
        std::size_t best = first;
        for (std::size_t i = first; i < last; ++i) {
            if (std::abs(runs[i].e) > std::abs(runs[best].e)) best = i;
        }
        return best;
    };
    while (static_cast<int>(last - first) > count) {
        const std::size_t mi = max_idx();
        if (mi == first) {
            --last;
        } else if (mi == last - 1) {
            ++first;
        } else if (std::abs(runs[first].e) < std::abs(runs[last - 1].e)) {
            ++first;
        } else {
            --last;
        }
    }
    std::vector<double> out;
    for (std::size_t i = first; i < last; ++i) out.push_back(runs[i].x);
    return out;
}

// Single-point exchange: insert z into an alternating reference, dropping one
// point so that alternation in e is preserved.
inline std::vector<Candidate> single_exchange(std::vector<Candidate> ref, Candidate z) {
    const std::size_t m = ref.size();
    for (auto& r : ref) {
        if (r.x == z.x) {
            r = z;
            return ref;
        }
    }
    if (z.x < ref.front().x) {
        if (sgn(z.e) == sgn(ref.front().e)) {
            ref.front() = z;
        } else {
            ref.pop_back();
            ref.insert(ref.begin(), z);
        }
        return ref;
    }
    if (z.x > ref.back().x) {
        if (sgn(z.e) == sgn(ref.back().e)) {
            ref.back() = z;
        } else {
            ref.erase(ref.begin());
            ref.push_back(z);
        }
        return ref;
    }
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (z.x > ref[i].x && z.x < ref[i + 1].x) {
            if (sgn(z.e) == sgn(ref[i].e)) {
                ref[i] = z;
            } else {
                ref[i + 1] = z;
            }
            break;
        }
    }
    return ref;
}

inline int leading_effective_degree(const RealPolynomial& r, int n, double degree_tol) {
    if (n == 0) return 0;
    const auto c = r.coeffs();
    const double lead = r.degree() == n ? std::abs(c[n]) : 0.0;
    return lead <= degree_tol * r.coeff_norm() ? n - 1 : n;
}

}

/**
 * Checks the optimality certificate of res on S: n+1 points of S at which
 * |R| is within tol*L of ||R||_S and whose signs follow the delta rule.
 * The certificate also requires ||R||_S to agree with res.deviation and
 * R(0) = 1.
 */
inline AlternationCertificate verify_alternation(const MinResResult& res, const IntervalUnion& s, double tol) {
    AlternationCertificate cert;
    const auto& r = res.polynomial;
    const auto ext = local_extrema(r, s);
    for (const auto& e : ext) cert.sup_norm = std::max(cert.sup_norm, std::abs(e.value));
    if (std::abs(r(0.0) - 1.0) > 1e-10) {
        cert.reason = "R(0) != 1";
        return cert;
    }
    if (std::abs(cert.sup_norm - res.deviation) > tol * res.deviation) {
        cert.reason = "sup norm differs from reported deviation";
        return cert;
    }
    // Greedy longest alternating subsequence in sign(x)*R(x) among near-maximal extrema.
    std::vector<Extremum> picked;
    for (const auto& e : ext) {
        if (std::abs(e.value) < cert.sup_norm * (1.0 - tol)) continue;
        if (!picked.empty() && e.x == picked.back().x) continue;
        const int es = detail::sgn(e.x) * detail::sgn(e.value);
        if (picked.empty() || es != detail::sgn(picked.back().x) * detail::sgn(picked.back().value)) {
            picked.push_back(e);
        }
    }
    const std::size_t need = static_cast<std::size_t>(res.n) + 1;
    if (picked.size() < need) {
        cert.reason = "only " + std::to_string(picked.size()) + " alternation points, need " + std::to_string(need);
        return cert;
    }
    picked.resize(need);
    std::vector<double> xs;
    for (const auto& e : picked) xs.push_back(e.x);
    const auto pattern = sign_pattern(xs, detail::sgn(picked.front().value));
    for (std::size_t j = 0; j < need; ++j) {
        if (pattern.sigmas[j] != detail::sgn(picked[j].value)) {
            cert.reason = "sign pattern violated at witness " + std::to_string(j);
            return cert;
        }
    }
    cert.pass = true;
    cert.witnesses = std::move(xs);
    return cert;
}

/**
 * Minimal residual polynomial for degree n on S by a Remez-type exchange.
 * Writing R = sign(x) E on S, E alternates in plain sign on an optimal
 * reference, so the exchange works on E and the delta pattern is recovered
 * afterwards.
 */
inline MinResResult minres_exchange(const IntervalUnion& s, int n, const MinResOptions& opts = {}) {
    if (n < 0) throw InvalidInput("degree must be nonnegative");
    if (s.contains(0.0)) throw InvalidInput("minimal residual polynomial requires 0 outside S");

    MinResResult res;
    res.n = n;
    auto points = detail::initial_reference(s, n);
    LevelledSolution sol = solve_reference(s, n, sign_pattern(points));
    std::vector<Extremum> ext;
    double sup = 0.0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        res.iterations = it;
        ext = local_extrema(sol.poly, s);
        sup = 0.0;
        for (const auto& e : ext) sup = std::max(sup, std::abs(e.value));
        if (sup - sol.lambda <= opts.tol * sol.lambda) {
            res.converged = true;
            break;
        }
        std::vector<detail::Candidate> cands;
        for (const auto& e : ext) cands.push_back({e.x, detail::sgn(e.x) * e.value});
        std::vector<detail::Candidate> old;
        for (double x : sol.reference.points) {
            const detail::Candidate c{x, detail::sgn(x) * sol.poly(x)};
            cands.push_back(c);
            old.push_back(c);
        }
        auto next = detail::select_alternating(cands, n + 1, sol.lambda * (1.0 - 1e-9));
        if (next.empty() || next == sol.reference.points) {
            // fall back to inserting the global maximum alone
            detail::Candidate top{ext.front().x, detail::sgn(ext.front().x) * ext.front().value};
            for (const auto& e : ext) {
                if (std::abs(e.value) > std::abs(top.e)) top = {e.x, detail::sgn(e.x) * e.value};
            }
            const auto swapped = detail::single_exchange(old, top);
            next.clear();
            for (const auto& c : swapped) next.push_back(c.x);
            if (next == sol.reference.points) break;
        }
        sol = solve_reference(s, n, sign_pattern(next));
    }
    if (!res.converged) {
        ext = local_extrema(sol.poly, s);
        sup = 0.0;
        for (const auto& e : ext) sup = std::max(sup, std::abs(e.value));
        res.converged = sup - sol.lambda <= opts.tol * sol.lambda;
    }

    res.polynomial = sol.poly;
    res.deviation = sup;
    res.levelled = sol.lambda;
    res.reference = sol.reference;
    res.effective_degree = detail::leading_effective_degree(sol.poly, n, opts.degree_tol);
    for (double x : res.reference.points) {
        res.certificate_residual = std::max(res.certificate_residual, std::abs(std::abs(sol.poly(x)) - sup));
    }
    res.certified = res.converged && std::abs(sol.poly(0.0) - 1.0) <= 1e-12 &&
                    verify_alternation(res, s, opts.certify_tol).pass;
    return res;
}

struct GridOracleResult {
    double lower = 0.0;  // discrete minimax value: a lower bound for L_n(S)
    double upper = 0.0;  // ||R_grid||_S: an upper bound for L_n(S)
    RealPolynomial poly;
    int grid_per_interval = 0;
    int iterations = 0;
};

/**
 * Independent bracket for L_n(S): discrete minimax over a Chebyshev-density
 * grid on each interval, solved by single-point exchange with R = 1 + x Q.
 * Any alternating levelled reference gives a lower bound; the sup norm of
 * the resulting polynomial over S gives an upper bound.
 *
 * grid_per_interval <= 0 selects max(64, 16(n+1)); the grid is doubled up to
 * max_refinements times while the bracket is wider than 1e-7*upper. When
 * require_gap is set and the bracket stays wider, NumericFailure is thrown.
 */
inline GridOracleResult minres_grid_oracle(const IntervalUnion& s, int n, int grid_per_interval = 0,
                                           int max_refinements = 1, bool require_gap = false) {
    if (n < 0) throw InvalidInput("degree must be nonnegative");
    if (s.contains(0.0)) throw InvalidInput("minimal residual polynomial requires 0 outside S");
    if (grid_per_interval <= 0) grid_per_interval = std::max(64, 16 * (n + 1));
    if (grid_per_interval < 4 * (n + 1)) throw InvalidInput("grid_per_interval must be at least 4(n+1)");

    const double lo = s.hull_lo();
    const double hi = s.hull_hi();
    auto to_u = [&](double x) { return (2.0 * x - lo - hi) / (hi - lo); };

    GridOracleResult out;
    for (int refinement = 0;; ++refinement) {
        std::vector<double> grid;
        for (const auto& iv : s.intervals()) {
            for (int i = 0; i < grid_per_interval; ++i) {
                grid.push_back(iv.lo + (iv.hi - iv.lo) * 0.5 * (1.0 - std::cos(std::numbers::pi * i / (grid_per_interval - 1))));
            }
        }
        const int g = static_cast<int>(grid.size());

        std::vector<int> ref(n + 1);
        for (int j = 0; j <= n; ++j) ref[j] = n == 0 ? 0 : static_cast<int>(std::lround(static_cast<double>(j) * (g - 1) / n));

        // Unknowns: Chebyshev coefficients b_0..b_{n-1} of Q and the level h.
        Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
        double h = 1.0;
        auto residual = [&](double x) {
            const double u = to_u(x);
            double tkm1 = 1.0;
            double tk = u;
            double q = n >= 1 ? b(0) : 0.0;
            for (int k = 1; k < n; ++k) {
                q += b(k) * tk;
                const double next = 2.0 * u * tk - tkm1;
                tkm1 = tk;
                tk = next;
            }
            return 1.0 + x * q;
        };
        auto solve = [&]() {
            Eigen::MatrixXd a(n + 1, n + 1);
            Eigen::VectorXd rhs = Eigen::VectorXd::Constant(n + 1, -1.0);
            for (int j = 0; j <= n; ++j) {
                const double x = grid[ref[j]];
                const double u = to_u(x);
                double tkm1 = 1.0;
                double tk = u;
                for (int k = 0; k < n; ++k) {
                    if (k == 0) {
                        a(j, k) = x;
                    } else {
                        a(j, k) = x * tk;
                        const double next = 2.0 * u * tk - tkm1;
                        tkm1 = tk;
                        tk = next;
                    }
                }
                a(j, n) = -(x > 0 ? 1.0 : -1.0) * (j % 2 == 0 ? 1.0 : -1.0);
            }
            const Eigen::VectorXd sol = a.partialPivLu().solve(rhs);
            b = sol.head(n);
            h = sol(n);
        };

        solve();
        int it = 0;
        for (; it < 20000; ++it) {
            int top = 0;
            double top_abs = -1.0;
            for (int i = 0; i < g; ++i) {
                const double v = std::abs(residual(grid[i]));
                if (v > top_abs) {
                    top_abs = v;
                    top = i;
                }
            }
            if (top_abs <= std::abs(h) * (1.0 + 1e-13)) break;
            auto e_at = [&](int i) { return (grid[i] > 0 ? 1.0 : -1.0) * residual(grid[i]); };
            const double ez = e_at(top);
            const auto same = [](double a, double c) { return (a >= 0) == (c >= 0); };
            auto pos = std::lower_bound(ref.begin(), ref.end(), top);
            if (pos != ref.end() && *pos == top) break;
            if (pos == ref.begin()) {
                if (same(ez, e_at(ref.front()))) {
                    ref.front() = top;
                } else {
                    ref.pop_back();
                    ref.insert(ref.begin(), top);
                }
            } else if (pos == ref.end()) {
                if (same(ez, e_at(ref.back()))) {
                    ref.back() = top;
                } else {
                    ref.erase(ref.begin());
                    ref.push_back(top);
                }
            } else {
                auto prev = pos - 1;
                if (same(ez, e_at(*prev))) {
                    *prev = top;
                } else {
                    *pos = top;
                }
            }
            solve();
        }

        out.poly = interpolate_chebyshev(residual, n, lo, hi);
        out.lower = std::abs(h);
        out.upper = sup_norm(out.poly, s);
        out.grid_per_interval = grid_per_interval;
        out.iterations = it;
        const bool tight = out.upper - out.lower <= 1e-7 * out.upper;
        if (tight) break;
        if (refinement >= max_refinements) {
            if (require_gap) throw NumericFailure("grid oracle bracket wider than requested after refinement cap");
            break;
        }
        grid_per_interval *= 2;
    }
    return out;
}

}

#endif

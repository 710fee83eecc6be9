#ifndef RESBOUND_TOOLS_CLI_HPP
#define RESBOUND_TOOLS_CLI_HPP

#include <cstdlib>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "resbound.hpp"

namespace resbound::cli {

enum ExitCode { ok = 0, invalid_input = 2, not_certified = 3 };

struct RunConfig {
    std::string command;
    std::string set_spec;
    std::string poly_spec;
    int n = 1;
    int n_max = 5;
    double tol = 1e-10;
    double quad_tol = kDefaultQuadTol;
    int max_iter = 100;
    int grid = 0;  // 0: no grid oracle
    std::optional<double> x;
    int samples = 0;
    std::string format;  // empty: command default
    std::uint64_t seed = 1;
};

inline std::string default_format(const std::string& command) { return command == "report" ? "csv" : "json"; }

inline json report_row_json(const BoundReport& r) {
    json j;
    j["n"] = r.n;
    j["L"] = r.L;
    j["kappa"] = r.kappa;
    j["classic"] = r.classic;
    j["sharp"] = r.sharp;
    j["ratio"] = r.ratio;
    j["equality"] = to_string(r.equality);
    j["effective_degree"] = r.effective_degree;
    j["certified"] = r.certified;
    if (r.ln_next_equal) j["ln_next_equal"] = *r.ln_next_equal;
    return j;
}

inline void write_report_csv(const std::vector<BoundReport>& rows, std::ostream& out) {
    out << "n,L,classic,sharp,ratio,equality,certified\n";
    for (const auto& r : rows) {
        out << r.n << ',' << format_real(r.L) << ',' << format_real(r.classic) << ',' << format_real(r.sharp) << ','
            << format_real(r.ratio) << ',' << to_string(r.equality) << ',' << (r.certified ? "true" : "false") << '\n';
    }
}

inline json minres_json(const MinResResult& res) {
    json j;
    j["n"] = res.n;
    j["L"] = res.deviation;
    j["levelled"] = res.levelled;
    j["coeffs"] = std::vector<double>(res.polynomial.coeffs().begin(), res.polynomial.coeffs().end());
    j["basis"] = res.polynomial.basis() == Basis::chebyshev ? "chebyshev" : "monomial";
    j["interval"] = json::array({res.polynomial.lo(), res.polynomial.hi()});
    j["reference"] = res.reference.points;
    j["deltas"] = res.reference.deltas;
    j["sigmas"] = res.reference.sigmas;
    j["effective_degree"] = res.effective_degree;
    j["iterations"] = res.iterations;
    j["certified"] = res.certified;
    return j;
}

/// Dispatches one command; result on `out`, diagnostics on `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::string format = cfg.format.empty() ? default_format(cfg.command) : cfg.format;
    try {
        if (format != "json" && format != "csv") throw InvalidInput("format must be json or csv");
        if (!(cfg.tol > 0.0) || !(cfg.quad_tol > 0.0)) throw InvalidInput("tolerances must be positive");
        if (cfg.n < 0 || cfg.n_max < 0) throw InvalidInput("degrees must be nonnegative");

        MinResOptions opts;
        opts.tol = cfg.tol;
        opts.max_iter = cfg.max_iter;

        if (cfg.command == "kappa") {
            const auto s = parse_set(cfg.set_spec);
            if (s.contains(0.0)) throw InvalidInput("0 lies in S");
            const GreenFunction g(s, cfg.quad_tol);
            const auto ev = g.evaluate(0.0);
            const double k = std::exp(-ev.value);
            if (format == "csv") {
                out << "kappa,g0\n" << format_real(k) << ',' << format_real(ev.value) << '\n';
            } else {
                json j = to_json(s);
                j["kappa"] = k;
                j["g0"] = ev.value;
                j["est_error"] = ev.est_error;
                out << dump17(j) << '\n';
            }
            return ok;
        }

        if (cfg.command == "minres") {
            const auto s = parse_set(cfg.set_spec);
            const auto res = minres_exchange(s, cfg.n, opts);
            json j = minres_json(res);
            if (cfg.grid > 0) {
                const auto oracle = minres_grid_oracle(s, cfg.n, cfg.grid);
                j["oracle"] = {{"lower", oracle.lower}, {"upper", oracle.upper}, {"grid", oracle.grid_per_interval}};
            }
            if (format == "csv") {
                out << "n,L,effective_degree,certified\n"
                    << res.n << ',' << format_real(res.deviation) << ',' << res.effective_degree << ','
                    << (res.certified ? "true" : "false") << '\n';
            } else {
                out << dump17(j) << '\n';
            }
            if (!res.certified) {
                err << "minres: result not certified\n";
                return not_certified;
            }
            return ok;
        }

        if (cfg.command == "bound") {
            const auto s = parse_set(cfg.set_spec);
            if (s.contains(0.0)) throw InvalidInput("0 lies in S");
            const double k = kappa(s, cfg.quad_tol);
            const auto row = make_bound_report(minres_exchange(s, cfg.n, opts), k, s);
            if (format == "csv") {
                write_report_csv({row}, out);
            } else {
                out << dump17(report_row_json(row)) << '\n';
            }
            return row.certified ? ok : not_certified;
        }

        if (cfg.command == "report") {
            const auto s = parse_set(cfg.set_spec);
            const auto rows = compare_report(s, cfg.n_max, cfg.quad_tol, opts);
            if (format == "csv") {
                write_report_csv(rows, out);
            } else {
                json arr = json::array();
                for (const auto& r : rows) arr.push_back(report_row_json(r));
                out << dump17(json{{"rows", arr}}) << '\n';
            }
            for (const auto& r : rows) {
                if (!r.certified) {
                    err << "report: row n=" << r.n << " not certified\n";
                    return not_certified;
                }
            }
            return ok;
        }

        if (cfg.command == "invimage") {
            const auto p = parse_polynomial(cfg.poly_spec);
            const auto check = check_admissible(p);
            if (!check) {
                json j{{"admissible", false}, {"reason", to_string(check.reason)}, {"detail", check.detail}};
                out << dump17(j) << '\n';
                err << "invimage: polynomial is not admissible (" << check.detail << ")\n";
                return invalid_input;
            }
            const auto image = inverse_image(*check);
            json j = to_json(image);
            j["admissible"] = true;
            j["degree"] = check->degree();
            j["ell"] = check->ell;
            j["endpoints"] = std::vector<double>(image.endpoints().begin(), image.endpoints().end());
            bool certified = true;
            if (image.contains(0.0)) {
                j["L_n"] = nullptr;
                j["kappa_pow_n"] = nullptr;
            } else {
                const auto sol = minres_from_invimage(*check);
                j["L_n"] = sol.result.deviation;
                j["kappa_pow_n"] = std::pow(kappa(image, cfg.quad_tol), check->degree());
                j["next_degree_same"] = sol.next_degree_same;
                j["certified"] = sol.result.certified;
                certified = sol.result.certified;
            }
            if (format == "csv") {
                out << "endpoint\n";
                for (double a : image.endpoints()) out << format_real(a) << '\n';
            } else {
                out << dump17(j) << '\n';
            }
            return certified ? ok : not_certified;
        }

        if (cfg.command == "bw") {
            const auto k = parse_set(cfg.set_spec);
            if (!cfg.x) throw InvalidInput("bw needs --x");
            const GreenFunction g(k, cfg.quad_tol);
            if (!cfg.poly_spec.empty()) {
                const auto c = bw_check(g, parse_polynomial(cfg.poly_spec), *cfg.x);
                json j{{"x", *cfg.x},
                       {"degree", c.degree},
                       {"lhs", c.lhs},
                       {"rhs", c.rhs},
                       {"classic_rhs", c.classic_rhs},
                       {"pass", c.pass},
                       {"refinement_strict", c.refinement_strict}};
                if (format == "csv") {
                    out << "lhs,rhs,classic_rhs,pass\n"
                        << format_real(c.lhs) << ',' << format_real(c.rhs) << ',' << format_real(c.classic_rhs) << ','
                        << (c.pass ? "true" : "false") << '\n';
                } else {
                    out << dump17(j) << '\n';
                }
                return c.pass ? ok : not_certified;
            }
            if (cfg.samples <= 0) throw InvalidInput("bw needs --poly or --samples");
            std::mt19937_64 rng(cfg.seed);
            std::uniform_real_distribution<double> coef(-1.0, 1.0);
            int passed = 0;
            double worst = 0.0;
            bool all_strict = true;
            for (int i = 0; i < cfg.samples; ++i) {
                std::vector<double> c(cfg.n + 1);
                for (auto& v : c) v = coef(rng);
                if (cfg.n >= 1 && c.back() == 0.0) c.back() = 1.0;
                const auto r = bw_check(g, RealPolynomial::monomial(c), *cfg.x);
                passed += r.pass ? 1 : 0;
                worst = std::max(worst, r.lhs / r.rhs);
                all_strict = all_strict && (r.degree == 0 || r.refinement_strict);
            }
            json j{{"x", *cfg.x}, {"n", cfg.n},           {"samples", cfg.samples}, {"seed", cfg.seed},
                   {"passed", passed}, {"max_lhs_over_rhs", worst}, {"all_strict", all_strict}};
            out << dump17(j) << '\n';
            return passed == cfg.samples ? ok : not_certified;
        }

        throw InvalidInput("unknown command \"" + cfg.command + "\"");
    } catch (const InvalidInput& e) {
        err << cfg.command << ": " << e.what() << '\n';
        return invalid_input;
    } catch (const NumericFailure& e) {
        err << cfg.command << ": numeric failure: " << e.what() << '\n';
        return not_certified;
    }
}

/// Builds a RunConfig from argv. Returns the CLI11 exit code when parsing stops early (help, errors).
inline std::optional<int> parse_args(int argc, const char* const* argv, RunConfig& cfg, std::ostream& out,
                                     std::ostream& err) {
    CLI::App app{"Minimal residual polynomials, convergence factors and lower bounds on real interval unions"};
    app.require_subcommand(1);

    bool quad_tol_given = false;
    auto add_common = [&](CLI::App* sub, bool needs_set) {
        auto* set = sub->add_option("--set", cfg.set_spec, "interval union: \"a1,a2;a3,a4\", inline JSON or @file.json");
        if (needs_set) set->required();
        sub->add_option("--tol", cfg.tol, "exchange stopping tolerance")->capture_default_str();
        sub->add_option_function<double>(
               "--quad-tol",
               [&](double v) {
                   cfg.quad_tol = v;
                   quad_tol_given = true;
               },
               "quadrature tolerance (default 1e-12, or $MINRES_QUAD_TOL)");
        sub->add_option("--max-iter", cfg.max_iter, "exchange iteration cap")->capture_default_str();
        sub->add_option("--format", cfg.format, "json or csv");
        sub->add_option("--seed", cfg.seed, "seed for randomised checks")->capture_default_str();
    };

    auto* kappa_cmd = app.add_subcommand("kappa", "convergence factor exp(-g(0))");
    add_common(kappa_cmd, true);

    auto* minres_cmd = app.add_subcommand("minres", "minimal residual polynomial and L_n(S)");
    add_common(minres_cmd, true);
    minres_cmd->add_option("--n", cfg.n, "degree")->required();
    minres_cmd->add_option("--grid", cfg.grid, "grid oracle points per interval (0: off)");

    auto* bound_cmd = app.add_subcommand("bound", "L_n against the classic and sharp lower bounds");
    add_common(bound_cmd, true);
    bound_cmd->add_option("--n", cfg.n, "degree")->required();

    auto* report_cmd = app.add_subcommand("report", "bound table for n = 0..n_max");
    add_common(report_cmd, true);
    report_cmd->add_option("--n-max", cfg.n_max, "largest degree")->required();

    auto* inv_cmd = app.add_subcommand("invimage", "inverse image of [-1,1] under a polynomial");
    add_common(inv_cmd, false);
    inv_cmd->add_option("--poly", cfg.poly_spec, "polynomial JSON or @file.json")->required();

    auto* bw_cmd = app.add_subcommand("bw", "refined Bernstein-Walsh check at a real point outside K");
    add_common(bw_cmd, true);
    bw_cmd->add_option("--x", cfg.x, "evaluation point")->required();
    bw_cmd->add_option("--poly", cfg.poly_spec, "polynomial Q (JSON or @file.json)");
    bw_cmd->add_option("--samples", cfg.samples, "number of random polynomials to check instead of --poly");
    bw_cmd->add_option("--n", cfg.n, "degree of random polynomials");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? ok : invalid_input;
    }
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (!quad_tol_given) {
        if (const char* env = std::getenv("MINRES_QUAD_TOL")) {
            try {
                cfg.quad_tol = std::stod(env);
            } catch (const std::exception&) {
                err << "ignoring malformed MINRES_QUAD_TOL\n";
            }
        }
    }
    return std::nullopt;
}

}

#endif

#pragma once

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "specinf/config.hpp"
#include "specinf/localization.hpp"
#include "specinf/oracle.hpp"
#include "specinf/report.hpp"
#include "specinf/selfcheck.hpp"
#include "specinf/spectral.hpp"

// Command layer. Exit codes are a stable contract:
//   0 success, 1 config error, 2 partial convergence, 3 oracle failure.
// Override precedence for out dir and jobs: CLI flag > environment > config.

namespace specinf {

inline constexpr double kRefineTol = 1e-6;   // grid-refinement reliability bound

struct CliOverrides {
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<int> budget;
    std::optional<int> jobs;
};

inline void apply_overrides(RunConfig& cfg, const CliOverrides& cli) {
    if (const char* e = std::getenv("SPECINF_OUT")) cfg.out_dir = e;
    if (const char* e = std::getenv("SPECINF_JOBS")) {
        try {
            cfg.jobs = std::stoi(e);
        } catch (const std::exception&) {
            throw ConfigError("SPECINF_JOBS must be an integer");
        }
    }
    if (cli.out) cfg.out_dir = *cli.out;
    if (cli.seed) cfg.seed = *cli.seed;
    if (cli.budget) cfg.budget = *cli.budget;
    if (cli.jobs) cfg.jobs = *cli.jobs;
}

namespace detail {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// stdout summaries use the shortest round-trip form; files keep %.17g
inline std::string fmt_human(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline SpectralReport run_spectral(const RunConfig& cfg) {
    Hamiltonian H = build_hamiltonian(cfg);
    return essential_spectrum_bottom(H, build_grid(cfg), cfg.budget, build_lanczos(cfg),
                                     cfg.jobs);
}

} // namespace detail

inline int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
    detail::Stopwatch sw;
    SpectralReport rep = detail::run_spectral(cfg);
    RunReport rr{"spectrum", cfg, std::move(rep), {}, {}, {}, {}};
    rr.timings_s.push_back({"total", sw.seconds()});
    write_run_report(rr, cfg.out_dir);
    const SpectralReport& s = *rr.spectral;
    out << "essential spectrum bottom: " << detail::fmt_human(s.bottom) << " over " << s.rows.size()
        << " distinct localizations\n";
    if (s.incomplete) out << "WARNING: some localizations did not converge\n";
    out << "report written to " << cfg.out_dir << "\n";
    return s.incomplete ? 2 : 0;
}

inline int cmd_verify_hvz(const RunConfig& cfg, std::ostream& out) {
    detail::Stopwatch sw_all;
    Hamiltonian H = build_hamiltonian(cfg);
    Grid g = build_grid(cfg);

    detail::Stopwatch sw_spec;
    SpectralReport rep = essential_spectrum_bottom(H, g, cfg.budget, build_lanczos(cfg), cfg.jobs);
    double t_spec = sw_spec.seconds();

    detail::Stopwatch sw_edge;
    EdgeEstimate edge = brute_force_edge(H, build_edge_grid(cfg), build_edge_options(cfg));
    double t_edge = sw_edge.seconds();

    VerifySummary v;
    v.bottom = rep.bottom;
    v.edge = edge.edge;
    v.gap = std::abs(rep.bottom - edge.edge);
    v.tol = cfg.hvz_tol;
    v.pass = edge.found && !rep.incomplete && v.gap <= cfg.hvz_tol;
    v.refine_checked = cfg.refine_check;
    if (cfg.refine_check) {
        Grid fine(g.d, g.L, 2 * g.n);
        SpectralReport rep2 = essential_spectrum_bottom(H, fine, cfg.budget, build_lanczos(cfg),
                                                        cfg.jobs);
        v.refine_bottom = rep2.bottom;
        v.reliable = std::abs(rep2.bottom - rep.bottom) <= kRefineTol * (1.0 + std::abs(rep.bottom));
    }

    bool incomplete = rep.incomplete;
    bool found = edge.found;
    RunReport rr{"verify-hvz", cfg, std::move(rep), std::move(edge), v, {}, {}};
    rr.timings_s.push_back({"spectral", t_spec});
    rr.timings_s.push_back({"edge", t_edge});
    rr.timings_s.push_back({"total", sw_all.seconds()});
    write_run_report(rr, cfg.out_dir);

    out << "localization bottom: " << detail::fmt_human(v.bottom) << "\n";
    out << "counting-function edge: " << detail::fmt_human(v.edge) << (found ? "" : " (not found)")
        << "\n";
    out << "gap: " << detail::fmt_human(v.gap) << " against tolerance " << detail::fmt_human(v.tol)
        << " -> " << (v.pass ? "pass" : "FAIL") << "\n";
    if (v.refine_checked && !v.reliable)
        out << "WARNING: grid refinement moved the bottom; result marked unreliable\n";
    out << "report written to " << cfg.out_dir << "\n";

    if (!found) return 3;
    if (incomplete) return 2;
    return v.pass ? 0 : 3;
}

inline int cmd_localize(const RunConfig& cfg, std::ostream& out) {
    if (cfg.loc_direction.size() == 0)
        throw ConfigError("localize needs a [localize] direction in the config");
    Hamiltonian H = build_hamiltonian(cfg);
    Direction alpha(cfg.loc_direction);
    LocalizedHamiltonian loc = localize(H, alpha);

    nlohmann::ordered_json res;
    res["direction"] = std::vector<double>(alpha.vector().data(),
                                           alpha.vector().data() + alpha.vector().size());
    res["dispersion"] = loc.dispersion().describe();
    res["offset"] = loc.offset();
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const PotentialTerm& t : loc.terms()) terms.push_back(t.describe());
    res["surviving_terms"] = std::move(terms);

    RunReport rr{"localize", cfg, {}, {}, {}, res, {}};
    write_run_report(rr, cfg.out_dir);
    out << res.dump(2) << "\n";
    return 0;
}

inline int cmd_character(const RunConfig& cfg, std::ostream& out) {
    if (cfg.chain.empty() && !cfg.has_point)
        throw ConfigError("character needs a [character] chain and point in the config");
    if (!cfg.has_point) throw ConfigError("character needs a [character] point in the config");
    Hamiltonian H = build_hamiltonian(cfg);
    if (H.terms().empty()) throw ConfigError("character needs at least one potential term");

    AlgebraElement u(cfg.dim);
    for (const PotentialTerm& t : H.terms()) u = u + AlgebraElement::generator(t);

    std::vector<Direction> dirs;
    for (const Vec& v : cfg.chain) dirs.emplace_back(v);
    DirectionChain chain(cfg.dim, dirs);
    Character kappa{chain, cfg.point};
    AlgebraElement projected = tau_chain(u, chain);
    double value = evaluate_character(u, kappa);

    nlohmann::ordered_json res;
    res["element"] = u.describe();
    res["tau_chain_result"] = projected.describe();
    res["value"] = value;

    RunReport rr{"character", cfg, {}, {}, {}, res, {}};
    write_run_report(rr, cfg.out_dir);
    out << "tau chain result: " << projected.describe() << "\n";
    out << "character value: " << detail::fmt_human(value) << "\n";
    return 0;
}

inline int cmd_selfcheck(const RunConfig& cfg, std::ostream& out) {
    SelfCheckOptions opt;
    opt.tol_scale = cfg.selfcheck_scale;
    opt.seed = cfg.seed;
    std::vector<SuiteResult> rs = run_selfcheck(opt);

    nlohmann::ordered_json res = nlohmann::ordered_json::array();
    for (const SuiteResult& r : rs) {
        nlohmann::ordered_json jr;
        jr["suite"] = r.name;
        jr["pass"] = r.pass;
        jr["marginal"] = r.marginal;
        jr["worst"] = r.worst;
        jr["tol"] = r.tol;
        res.push_back(std::move(jr));
    }
    RunReport rr{"selfcheck", cfg, {}, {}, {}, res, {}};
    write_run_report(rr, cfg.out_dir);

    out << format_selfcheck(rs);
    bool ok = all_suites_pass(rs);
    out << (ok ? "all suites pass\n" : "selfcheck FAILED\n");
    return ok ? 0 : 3;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"localization-at-infinity essential spectrum toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    int budget = 0, jobs = 0;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        CLI::Option* c = sub->add_option("--config", config_path, "config file (ini)");
        if (config_required) c->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "seed override");
        sub->add_option("--budget", budget, "direction sampler budget override");
        sub->add_option("--jobs", jobs, "worker thread override");
    };

    CLI::App* sp = app.add_subcommand("spectrum", "sampled bottom of the essential spectrum");
    CLI::App* vh = app.add_subcommand("verify-hvz", "cross-check against the counting oracle");
    CLI::App* lo = app.add_subcommand("localize", "print one localized Hamiltonian");
    CLI::App* ch = app.add_subcommand("character", "evaluate a character on the potential algebra");
    CLI::App* sc = app.add_subcommand("selfcheck", "run the built-in property suites");
    add_common(sp, true);
    add_common(vh, true);
    add_common(lo, true);
    add_common(ch, true);
    add_common(sc, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        RunConfig cfg;   // selfcheck without --config runs on defaults
        if (!config_path.empty()) cfg = parse_config_file(config_path);
        CliOverrides ov;
        if (sub->count("--out")) ov.out = out_dir;
        if (sub->count("--seed")) ov.seed = seed;
        if (sub->count("--budget")) ov.budget = budget;
        if (sub->count("--jobs")) ov.jobs = jobs;
        apply_overrides(cfg, ov);
        validate_config(cfg);

        if (sub == sp) return cmd_spectrum(cfg, out);
        if (sub == vh) return cmd_verify_hvz(cfg, out);
        if (sub == lo) return cmd_localize(cfg, out);
        if (sub == ch) return cmd_character(cfg, out);
        return cmd_selfcheck(cfg, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 1;
    } catch (const InsufficientBudget& e) {
        err << "config error: " << e.what() << "\n";
        return 1;
    } catch (const InvalidInput& e) {
        err << "config error: " << e.what() << "\n";
        return 1;
    } catch (const ConvergenceFailure& e) {
        err << "partial convergence: " << e.what() << "\n";
        return 2;
    } catch (const OracleFailure& e) {
        err << "oracle failure: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace specinf

// Acceptance gate: one line per criterion, exit 0 only if all pass.
// Tolerances are pinned here, not read from any config.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "specinf/specinf.hpp"

using namespace specinf;
namespace fs = std::filesystem;

namespace {

constexpr double kExactTol = 1e-10;      // criteria 1 and 2: bottoms known in closed form
constexpr double kEdgeTol = 0.05;        // criteria 2 and 3: counting-function edge agreement
constexpr double kAxisOracleTol = 1e-6;  // criterion 3: separable axis wells vs 1d dense solve
constexpr double kAngularTol = 1e-3;     // criterion 4: sampled minimum of the angular profile
constexpr double kAlgebraTol = 1e-12;    // criterion 5: exact algebra identities
constexpr double kChainTol = 1e-6;       // criterion 5: numeric iterated ray limit
constexpr double kDecayFactor = 0.35;    // criterion 6: defect after two halvings
constexpr double kQuotientFinal = 1e-3;  // criterion 7: final quotient defect
constexpr double kTime1 = 1.0;           // seconds
constexpr double kTime2 = 120.0;
constexpr double kTime3 = 600.0;

struct Outcome {
    bool pass = false;
    std::string detail;
    double secs = 0.0;
};

std::string fmt(double x) {
    std::ostringstream o;
    o.precision(6);
    o << x;
    return o.str();
}

Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

fs::path g_configs = "configs";

RunConfig load_case(const std::string& name) {
    RunConfig c = parse_config_file((g_configs / name).string());
    validate_config(c);
    return c;
}

// criterion 1: the discretized free line has its essential spectrum bottom at 0
Outcome crit1() {
    RunConfig cfg = load_case("case1_free.ini");
    SpectralReport rep = essential_spectrum_bottom(build_hamiltonian(cfg), build_grid(cfg),
                                                   cfg.budget, build_lanczos(cfg));
    Outcome o;
    o.pass = !rep.incomplete && std::abs(rep.bottom) <= kExactTol;
    o.detail = "bottom " + fmt(rep.bottom);
    return o;
}

// criterion 2: step plus well; localized bottoms are exact constants and the
// counting oracle lands near the lower plateau at two box sizes with fixed dx
Outcome crit2() {
    RunConfig cfg = load_case("case2_two_limits.ini");
    Hamiltonian H = build_hamiltonian(cfg);
    SpectralReport rep = essential_spectrum_bottom(H, build_grid(cfg), cfg.budget,
                                                   build_lanczos(cfg));
    bool ok = !rep.incomplete && std::abs(rep.bottom - (-0.5)) <= kExactTol;
    std::string detail = "bottom " + fmt(rep.bottom);

    EdgeOptions opt = build_edge_options(cfg);
    Grid base = build_edge_grid(cfg);
    for (int mult : {1, 2}) {
        Grid box(base.d, mult * base.L, mult * base.n);   // same dx, larger box
        EdgeEstimate est = brute_force_edge(H, box, opt);
        ok = ok && est.found && std::abs(est.edge - (-0.5)) <= kEdgeTol;
        detail += ", edge(L=" + fmt(box.L) + ") " + (est.found ? fmt(est.edge) : "not found");
    }
    Outcome o;
    o.pass = ok;
    o.detail = detail;
    return o;
}

// criterion 3: two axis wells in the plane; each axis localization reproduces
// the 1d dense ground state and the counting edge matches the lower one
Outcome crit3() {
    RunConfig cfg = load_case("case3_hvz.ini");
    Hamiltonian H = build_hamiltonian(cfg);
    Grid g = build_grid(cfg);
    SpectralReport rep = essential_spectrum_bottom(H, g, cfg.budget, build_lanczos(cfg));

    bool ok = !rep.incomplete;
    std::string detail;
    double min_axis = 0.0;
    for (const TermConfig& t : cfg.terms) {
        Grid g1(1, g.L, g.n);
        Hamiltonian H1(Space(1), Dispersion::quadratic(1),
                       {PotentialTerm(Subspace::zero(1),
                                      RadialFn::gaussian_well(1, t.depth, t.width))});
        double oracle = discretize(H1, g1).dense_eigenvalues()[0];
        min_axis = std::min(min_axis, oracle);

        const Vec& axis = t.basis[0];
        bool matched = false;
        for (const SpectralRow& r : rep.rows) {
            if (std::abs(std::abs(r.alpha.dot(axis)) - 1.0) > 1e-9) continue;
            matched = true;
            if (std::abs(r.c_alpha - oracle) > kAxisOracleTol) ok = false;
        }
        if (!matched) ok = false;
        if (!detail.empty()) detail += ", ";
        detail += "axis oracle " + fmt(oracle);
    }

    EdgeEstimate est = brute_force_edge(H, build_edge_grid(cfg), build_edge_options(cfg));
    ok = ok && est.found && std::abs(est.edge - min_axis) <= kEdgeTol;
    detail += ", edge " + (est.found ? fmt(est.edge) : "not found") + ", bottom " +
              fmt(rep.bottom);
    Outcome o;
    o.pass = ok;
    o.detail = detail;
    return o;
}

// criterion 4: dense direction mesh resolves the minimizing angle of an
// angular potential profile
Outcome crit4() {
    RunConfig cfg = load_case("case4_angular.ini");
    SpectralReport rep = essential_spectrum_bottom(build_hamiltonian(cfg), build_grid(cfg),
                                                   cfg.budget, build_lanczos(cfg));
    const SpectralRow* best = nullptr;
    for (const SpectralRow& r : rep.rows)
        if (!best || r.c_alpha < best->c_alpha) best = &r;
    Outcome o;
    if (!best) {
        o.detail = "no rows";
        return o;
    }
    double angle = std::atan2(best->alpha[1], best->alpha[0]);
    if (angle < 0) angle += 2.0 * M_PI;
    double mesh_step = 2.0 * M_PI / double(cfg.budget);
    o.pass = !rep.incomplete && std::abs(best->c_alpha - (-0.5)) <= kAngularTol &&
             std::abs(angle - M_PI) <= mesh_step + 1e-9;
    o.detail = "min " + fmt(best->c_alpha) + " at angle " + fmt(angle) + " over " +
               std::to_string(rep.rows.size()) + " directions";
    return o;
}

// criterion 5: localization is an idempotent endomorphism of the potential
// algebra, chains match iterated numeric ray limits, characters multiply
Outcome crit5() {
    Subspace ax = orthonormalize({v2(1, 0)}, 2);
    Subspace ay = orthonormalize({v2(0, 1)}, 2);
    PotentialTerm g1(ax, RadialFn::gaussian_well(1, -2.0, 1.0));
    PotentialTerm g2(Subspace::zero(2), RadialFn::gaussian_well(2, -1.0, 2.0));
    PotentialTerm g3(ay, RadialFn::smooth_step(Vec::Ones(1), -1.0, 2.0, 1.0));

    DetRng rng(2025);
    double worst_idem = 0.0, worst_morph = 0.0;
    int points = 0;
    while (points < 100) {
        AlgebraElement u = AlgebraElement::constant(2, rng.normal()) +
                           AlgebraElement::generator(g1) * AlgebraElement::generator(g2) +
                           AlgebraElement::generator(g3).scaled(rng.normal());
        AlgebraElement v = AlgebraElement::generator(g2).scaled(rng.normal()) +
                           AlgebraElement::generator(g1) * AlgebraElement::generator(g1);
        Vec a(2);
        a << rng.normal(), rng.normal();
        if (a.norm() < 0.1) continue;
        Direction alpha(a);
        AlgebraElement tu = tau_alpha_elem(u, alpha);
        AlgebraElement ttu = tau_alpha_elem(tu, alpha);
        AlgebraElement sum_lhs = tau_alpha_elem(u + v, alpha);
        AlgebraElement sum_rhs = tau_alpha_elem(u, alpha) + tau_alpha_elem(v, alpha);
        AlgebraElement prod_lhs = tau_alpha_elem(u * v, alpha);
        AlgebraElement prod_rhs = tau_alpha_elem(u, alpha) * tau_alpha_elem(v, alpha);
        for (int p = 0; p < 5; ++p, ++points) {
            Vec x = v2(6.0 * rng.normal(), 6.0 * rng.normal());
            worst_idem = std::max(worst_idem, std::abs(ttu.eval(x) - tu.eval(x)));
            worst_morph = std::max(worst_morph, std::abs(sum_lhs.eval(x) - sum_rhs.eval(x)));
            worst_morph = std::max(worst_morph, std::abs(prod_lhs.eval(x) - prod_rhs.eval(x)));
        }
    }

    // chain vs a numerically iterated double ray limit
    AlgebraElement w = AlgebraElement::generator(g3) * AlgebraElement::generator(g2) +
                       AlgebraElement::generator(g3).scaled(3.0) +
                       AlgebraElement::constant(2, 0.25);
    DirectionChain chain(2, {Direction(v2(0, 1)), Direction(v2(1, 0))});
    double algebraic = tau_chain(w, chain).eval(v2(0.3, 0.1));
    double worst_chain = 0.0;
    for (double outer_r : {1e3, 2e3, 4e3}) {
        double val = w.eval(v2(0.3, 0.1) + 1e10 * v2(0, 1) + outer_r * v2(1, 0));
        worst_chain = std::max(worst_chain, std::abs(val - algebraic));
    }

    Character kappa(DirectionChain(2, {Direction(v2(1, 0))}), Vec::Constant(1, 0.7));
    double worst_char = 0.0;
    for (int t = 0; t < 50; ++t) {
        AlgebraElement u = AlgebraElement::constant(2, rng.normal()) +
                           AlgebraElement::generator(g1).scaled(rng.normal());
        AlgebraElement v = AlgebraElement::constant(2, rng.normal()) +
                           AlgebraElement::generator(g2).scaled(rng.normal());
        worst_char = std::max(worst_char,
                              std::abs(evaluate_character(u * v, kappa) -
                                       evaluate_character(u, kappa) * evaluate_character(v, kappa)));
        worst_char = std::max(worst_char,
                              std::abs(evaluate_character(u + v, kappa) -
                                       evaluate_character(u, kappa) - evaluate_character(v, kappa)));
    }

    Outcome o;
    o.pass = worst_idem <= kAlgebraTol && worst_morph <= kAlgebraTol &&
             worst_chain <= kChainTol && worst_char <= kAlgebraTol;
    o.detail = "idempotency " + fmt(worst_idem) + ", morphism " + fmt(worst_morph) + ", chain " +
               fmt(worst_chain) + ", characters " + fmt(worst_char);
    return o;
}

// criterion 6: commutators with modulation and translation defects shrink as
// the step is halved, reaching under 0.35 of the starting size after two steps
Outcome crit6() {
    Grid g(1, 16.0, 256);
    ProductOperator A(g);
    A.push_factor(ProductOperator::Rep::Momentum, ProductOperator::momentum_samples(g, [](const Vec& k) {
                      return 1.0 / (1.0 + k.squaredNorm());
                  }));
    RadialFn phi = RadialFn::smooth_step(Vec::Ones(1), -0.5, 0.3, 1.0);
    A.push_factor(ProductOperator::Rep::Position, ProductOperator::position_samples(g, [&](const Vec& x) {
                      return phi.eval(x);
                  }));

    double p0 = 4.0 * M_PI / g.L;
    double c0 = commutator_norm_Sp(A, Vec::Constant(1, p0));
    double c1 = commutator_norm_Sp(A, Vec::Constant(1, p0 / 2.0));
    double c2 = commutator_norm_Sp(A, Vec::Constant(1, p0 / 4.0));

    double q0 = 0.5;
    double t0 = translation_defect(A, Vec::Constant(1, q0));
    double t1 = translation_defect(A, Vec::Constant(1, q0 / 2.0));
    double t2 = translation_defect(A, Vec::Constant(1, q0 / 4.0));

    Outcome o;
    o.pass = c0 > c1 && c1 > c2 && c2 < kDecayFactor * c0 &&
             t0 > t1 && t1 > t2 && t2 < kDecayFactor * t0;
    o.detail = "commutator " + fmt(c0) + " > " + fmt(c1) + " > " + fmt(c2) + "; translation " +
               fmt(t0) + " > " + fmt(t1) + " > " + fmt(t2);
    return o;
}

// criterion 7: the quotient defect along the localization direction decays to
// below 1e-3 across doubling radii
Outcome crit7() {
    Grid g(1, 64.0, 1024);
    RadialFn phi = RadialFn::smooth_step(Vec::Ones(1), -0.5, 0.3, 1.0);
    auto psi = [](const Vec& k) { return 1.0 / (1.0 + k.squaredNorm()); };
    QuotientCheckResult r =
        two_body_quotient_check(phi, psi, Direction(Vec::Ones(1)), g, {4.0, 8.0, 16.0});
    Outcome o;
    o.pass = r.defects.size() == 3 && r.defects[0] > r.defects[1] && r.defects[1] > r.defects[2] &&
             r.defects[2] < kQuotientFinal;
    o.detail = "defects " + fmt(r.defects[0]) + " > " + fmt(r.defects[1]) + " > " +
               fmt(r.defects[2]);
    return o;
}

// criterion 8: above every localized bottom the spectrum has no gap wider
// than a few free level spacings
Outcome crit8() {
    struct Case {
        const char* file;
        int gap_n;   // 0 keeps the native resolution
    };
    const Case cases[] = {{"case1_free.ini", 0},
                          {"case2_two_limits.ini", 0},
                          {"case3_hvz.ini", 64},
                          {"case4_angular.ini", 64}};
    Outcome o;
    o.pass = true;
    int checked = 0;
    for (const Case& cs : cases) {
        RunConfig cfg = load_case(cs.file);
        Hamiltonian H = build_hamiltonian(cfg);
        Grid native = build_grid(cfg);
        Grid gap_grid = cs.gap_n ? Grid(native.d, native.L, cs.gap_n) : native;

        std::set<std::string> seen;
        for (const Direction& alpha : direction_sampler(H, std::size_t(cfg.budget))) {
            if (!seen.insert(strata(H, alpha).key()).second) continue;
            DiscretizedOperator A = discretize(localize(H, alpha), gap_grid);
            LanczosOptions lopt = build_lanczos(cfg);
            double c = ground_energy(A, lopt).value;
            GapCheckResult gc = interval_gap_check(A, c);
            ++checked;
            if (!gc.pass) {
                o.pass = false;
                o.detail += std::string(cs.file) + " gap " + fmt(gc.max_gap) + " vs scale " +
                            fmt(gc.free_gap_scale) + "; ";
            }
        }
    }
    if (o.pass) o.detail = std::to_string(checked) + " localized operators checked";
    return o;
}

// criterion 9: rerunning the spectrum command reproduces the csv tables byte
// for byte
Outcome crit9() {
    Outcome o;
    o.pass = true;
    struct Case {
        const char* file;
        bool polar;
    };
    const Case cases[] = {{"case2_two_limits.ini", false}, {"case4_angular.ini", true}};
    for (const Case& cs : cases) {
        fs::path d1 = fs::temp_directory_path() / ("specinf_accept_a_" + std::string(cs.file));
        fs::path d2 = fs::temp_directory_path() / ("specinf_accept_b_" + std::string(cs.file));
        fs::remove_all(d1);
        fs::remove_all(d2);
        std::string cfg = (g_configs / cs.file).string();
        for (const fs::path& d : {d1, d2}) {
            const char* argv[] = {"specinf", "spectrum", "--config", cfg.c_str(),
                                  "--out",   d.c_str()};
            std::ostringstream sink;
            if (run_cli(6, argv, sink, sink) != 0) {
                o.pass = false;
                o.detail += std::string(cs.file) + " run failed; ";
            }
        }
        if (slurp(d1 / "spectrum.csv") != slurp(d2 / "spectrum.csv") ||
            slurp(d1 / "spectrum.csv").empty()) {
            o.pass = false;
            o.detail += std::string(cs.file) + " spectrum.csv differs; ";
        }
        if (cs.polar && slurp(d1 / "polar.csv") != slurp(d2 / "polar.csv")) {
            o.pass = false;
            o.detail += std::string(cs.file) + " polar.csv differs; ";
        }
    }
    if (o.pass) o.detail = "spectrum tables identical across reruns";
    return o;
}

template <typename F>
Outcome timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = f();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    o.secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return o;
}

} // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--configs") g_configs = argv[i + 1];

    struct Entry {
        int id;
        const char* what;
        Outcome (*fn)();
        double budget;   // seconds, 0 = untimed
    };
    const Entry entries[] = {
        {1, "free operator bottom at zero", crit1, kTime1},
        {2, "two plateau potential: exact bottom and counting edge", crit2, kTime2},
        {3, "axis wells: 1d oracle match and counting edge", crit3, kTime3},
        {4, "angular profile minimizer on the direction mesh", crit4, 0.0},
        {5, "localization algebra identities", crit5, 0.0},
        {6, "commutator and translation defect decay", crit6, 0.0},
        {7, "quotient defect decay along the direction", crit7, 0.0},
        {8, "no spurious gaps above localized bottoms", crit8, 0.0},
        {9, "byte identical spectrum tables on rerun", crit9, 0.0},
    };

    bool all = true;
    for (const Entry& e : entries) {
        Outcome o = timed(e.fn);
        bool pass = o.pass && (e.budget == 0.0 || o.secs <= e.budget);
        std::ostringstream line;
        line << "criterion " << e.id << ": " << (pass ? "PASS" : "FAIL") << "  " << e.what;
        if (!o.detail.empty()) line << "  (" << o.detail << ")";
        line.setf(std::ios::fixed);
        line.precision(2);
        line << "  [" << o.secs << " s";
        if (e.budget > 0.0) line << " of " << e.budget << " allowed";
        line << "]";
        if (o.pass && e.budget > 0.0 && o.secs > e.budget) line << "  (over time budget)";
        std::cout << line.str() << std::endl;
        all = all && pass;
    }
    std::cout << (all ? "acceptance: all criteria pass" : "acceptance: FAILURES present")
              << std::endl;
    return all ? 0 : 1;
}

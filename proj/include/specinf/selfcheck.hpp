#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "specinf/lanczos.hpp"
#include "specinf/localization.hpp"
#include "specinf/operators.hpp"
#include "specinf/rng.hpp"
#include "specinf/spectral.hpp"

// Built-in property suites: localization idempotency and morphism laws,
// operator adjointness, free-operator exactness, and the defect decay
// sequences behind the limit-operator construction. Tolerances scale with
// SelfCheckOptions::tol_scale so a sweep exposes which suite sits closest
// to its bound; the tau hook lets a test fixture inject a broken
// localization and watch the right suite fail.

namespace specinf {

using TauElemHook = std::function<AlgebraElement(const AlgebraElement&, const Direction&)>;

struct SuiteResult {
    std::string name;
    bool pass = false;
    bool marginal = false;   // worst defect above half the tolerance
    double worst = 0.0;
    double tol = 0.0;
};

struct SelfCheckOptions {
    double tol_scale = 1.0;
    std::uint64_t seed = 2024;
    TauElemHook tau_hook;   // empty: use tau_alpha_elem
};

namespace detail {

inline SuiteResult finish_suite(std::string name, double worst, double tol,
                                double marginal_frac = 0.5) {
    SuiteResult r;
    r.name = std::move(name);
    r.worst = worst;
    r.tol = tol;
    r.pass = worst <= tol;
    r.marginal = worst > marginal_frac * tol;
    return r;
}

inline Direction random_direction(DetRng& rng, int dim) {
    for (;;) {
        Vec v(dim);
        for (int i = 0; i < dim; ++i) v[i] = rng.normal();
        if (v.norm() > 0.1) return Direction(v);
    }
}

inline Vec random_point(DetRng& rng, int dim, double box) {
    Vec x(dim);
    for (int i = 0; i < dim; ++i) x[i] = box * (2.0 * rng.uniform01() - 1.0);
    return x;
}

inline std::vector<PotentialTerm> selfcheck_generators() {
    Mat ex(2, 1), ey(2, 1);
    ex << 1.0, 0.0;
    ey << 0.0, 1.0;
    std::vector<PotentialTerm> gens;
    gens.emplace_back(Subspace(2, ex), RadialFn::gaussian_well(1, -2.0, 1.0));
    gens.emplace_back(Subspace(2, ey),
                      RadialFn::smooth_step(Vec::Ones(1), -0.5, 0.3, 1.0));
    gens.emplace_back(Subspace::zero(2), RadialFn::gaussian_well(2, -1.0, 2.0));
    return gens;
}

inline AlgebraElement random_element(DetRng& rng, const std::vector<PotentialTerm>& gens) {
    AlgebraElement u = AlgebraElement::constant(2, 2.0 * rng.uniform01() - 1.0);
    for (int m = 0; m < 3; ++m) {
        AlgebraElement mono = AlgebraElement::constant(2, 2.0 * rng.uniform01() - 1.0);
        int factors = 1 + int(rng.uniform01() * 2.0);
        for (int f = 0; f < factors; ++f) {
            std::size_t pick = std::size_t(rng.uniform01() * double(gens.size()));
            if (pick >= gens.size()) pick = gens.size() - 1;
            mono = mono * AlgebraElement::generator(gens[pick]);
        }
        u = u + mono;
    }
    return u;
}

inline double eval_defect(const AlgebraElement& a, const AlgebraElement& b, const Vec& x) {
    double va = a.eval(x);
    double vb = b.eval(x);
    return std::abs(va - vb) / (1.0 + std::abs(vb));
}

inline SuiteResult suite_idempotency(const SelfCheckOptions& opt, const TauElemHook& tau) {
    DetRng rng(opt.seed + 1);
    auto gens = selfcheck_generators();
    double worst = 0.0;
    for (int t = 0; t < 25; ++t) {
        AlgebraElement u = random_element(rng, gens);
        Direction a = random_direction(rng, 2);
        AlgebraElement once = tau(u, a);
        AlgebraElement twice = tau(once, a);
        for (int p = 0; p < 8; ++p)
            worst = std::max(worst, eval_defect(twice, once, random_point(rng, 2, 6.0)));
    }
    return finish_suite("localization idempotency", worst, 1e-12 * opt.tol_scale);
}

inline SuiteResult suite_morphism(const SelfCheckOptions& opt, const TauElemHook& tau) {
    DetRng rng(opt.seed + 2);
    auto gens = selfcheck_generators();
    double worst = 0.0;
    for (int t = 0; t < 25; ++t) {
        AlgebraElement u = random_element(rng, gens);
        AlgebraElement v = random_element(rng, gens);
        Direction a = random_direction(rng, 2);
        AlgebraElement sum_lhs = tau(u + v, a);
        AlgebraElement sum_rhs = tau(u, a) + tau(v, a);
        AlgebraElement prod_lhs = tau(u * v, a);
        AlgebraElement prod_rhs = tau(u, a) * tau(v, a);
        for (int p = 0; p < 8; ++p) {
            Vec x = random_point(rng, 2, 6.0);
            worst = std::max(worst, eval_defect(sum_lhs, sum_rhs, x));
            worst = std::max(worst, eval_defect(prod_lhs, prod_rhs, x));
        }
    }
    return finish_suite("localization morphism", worst, 1e-12 * opt.tol_scale);
}

inline SuiteResult suite_adjointness(const SelfCheckOptions& opt) {
    DetRng rng(opt.seed + 3);
    Grid g(1, 16.0, 128);
    Hamiltonian H(Space(1), Dispersion::quadratic(1),
                  {PotentialTerm(Subspace::zero(1), RadialFn::gaussian_well(1, -1.0, 1.0))});
    DiscretizedOperator A = discretize(H, g);

    RadialFn phi = RadialFn::smooth_step(Vec::Ones(1), -0.5, 0.3, 1.0);
    ProductOperator C(g);
    C.push_factor(ProductOperator::Rep::Momentum, ProductOperator::momentum_samples(g, [](const Vec& k) {
                      return 1.0 / (1.0 + k.squaredNorm());
                  }));
    C.push_factor(ProductOperator::Rep::Position, ProductOperator::position_samples(g, [&](const Vec& x) {
                      return phi.eval(x);
                  }));

    double worst = 0.0;
    auto rand_cvec = [&](std::size_t n) {
        CVec v(n);
        for (std::size_t i = 0; i < n; ++i) v[long(i)] = {rng.normal(), rng.normal()};
        return v;
    };
    for (int t = 0; t < 10; ++t) {
        CVec psi = rand_cvec(g.total());
        CVec phi_v = rand_cvec(g.total());
        std::complex<double> lhs = CVec(A.apply(psi)).dot(phi_v);
        std::complex<double> rhs = psi.dot(A.apply(phi_v));
        worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
        std::complex<double> clhs = CVec(C.apply(psi)).dot(phi_v);
        std::complex<double> crhs = psi.dot(C.apply_adjoint(phi_v));
        worst = std::max(worst, std::abs(clhs - crhs) / (1.0 + std::abs(clhs)));
    }
    return finish_suite("operator adjointness", worst, 1e-10 * opt.tol_scale);
}

inline SuiteResult suite_free_exactness(const SelfCheckOptions& opt) {
    Hamiltonian H(Space(1), Dispersion::quadratic(1), {});
    Grid g(1, 16.0, 256);
    SpectralReport rep = essential_spectrum_bottom(H, g, 2);
    double worst = std::abs(rep.bottom);
    for (const SpectralRow& r : rep.rows)
        if (!r.converged) worst = 1.0;
    return finish_suite("free operator exactness", worst, 1e-12 * opt.tol_scale);
}

// decay of the limit-operator defects: halve the step, the defect must drop
inline SuiteResult suite_defect_decay(const SelfCheckOptions& opt) {
    Grid g(1, 16.0, 256);
    RadialFn phi = RadialFn::smooth_step(Vec::Ones(1), -0.5, 0.3, 1.0);
    ProductOperator A(g);
    A.push_factor(ProductOperator::Rep::Momentum, ProductOperator::momentum_samples(g, [](const Vec& k) {
                      return 1.0 / (1.0 + k.squaredNorm());
                  }));
    A.push_factor(ProductOperator::Rep::Position, ProductOperator::position_samples(g, [&](const Vec& x) {
                      return phi.eval(x);
                  }));

    double p0 = 4.0 * M_PI / g.L;
    std::vector<double> comm, trans;
    for (double f : {1.0, 0.5, 0.25}) {
        comm.push_back(commutator_norm_Sp(A, Vec::Constant(1, p0 * f)));
        trans.push_back(translation_defect(A, Vec::Constant(1, 0.5 * f)));
    }
    double worst = 0.0;   // largest successive ratio over both sequences
    for (std::size_t i = 1; i < comm.size(); ++i) {
        worst = std::max(worst, comm[i] / comm[i - 1]);
        worst = std::max(worst, trans[i] / trans[i - 1]);
    }
    return finish_suite("limit defect decay", worst, 1.0 * opt.tol_scale, 0.9);
}

} // namespace detail

inline std::vector<SuiteResult> run_selfcheck(const SelfCheckOptions& opt = {}) {
    TauElemHook tau = opt.tau_hook;
    if (!tau)
        tau = [](const AlgebraElement& u, const Direction& a) { return tau_alpha_elem(u, a); };
    std::vector<SuiteResult> out;
    out.push_back(detail::suite_idempotency(opt, tau));
    out.push_back(detail::suite_morphism(opt, tau));
    out.push_back(detail::suite_adjointness(opt));
    out.push_back(detail::suite_free_exactness(opt));
    out.push_back(detail::suite_defect_decay(opt));
    return out;
}

inline bool all_suites_pass(const std::vector<SuiteResult>& rs) {
    for (const SuiteResult& r : rs)
        if (!r.pass) return false;
    return true;
}

inline std::string format_selfcheck(const std::vector<SuiteResult>& rs) {
    std::string out = "suite                        status    worst        tol\n";
    for (const SuiteResult& r : rs) {
        std::string status = r.pass ? (r.marginal ? "MARGINAL" : "PASS") : "FAIL";
        char line[160];
        std::snprintf(line, sizeof line, "%-28s %-9s %-12.3e %-12.3e\n", r.name.c_str(),
                      status.c_str(), r.worst, r.tol);
        out += line;
    }
    return out;
}

} // namespace specinf

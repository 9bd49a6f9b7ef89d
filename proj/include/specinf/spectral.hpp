#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

#include "specinf/errors.hpp"
#include "specinf/lanczos.hpp"
#include "specinf/localization.hpp"
#include "specinf/operators.hpp"

namespace specinf {

struct SpectralRow {
    Vec alpha;
    std::string signature;
    double c_alpha = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct SpectralReport {
    Grid grid;
    std::vector<SpectralRow> rows;
    double bottom = std::numeric_limits<double>::quiet_NaN();
    bool incomplete = false;
};

namespace detail {

inline bool lex_less(const Vec& a, const Vec& b) {
    for (int i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return a.size() < b.size();
}

} // namespace detail

// one ground-energy solve per distinct stratum signature; rows are emitted in
// canonical (lexicographic direction) order so the report is order-independent
inline SpectralReport essential_spectrum_bottom(const Hamiltonian& H, const Grid& g,
                                                std::size_t sampler_budget,
                                                const LanczosOptions& opt = {}, int jobs = 1) {
    std::vector<Direction> dirs = direction_sampler(H, sampler_budget);

    struct Task {
        std::string key;
        std::size_t rep;
        LanczosResult result;
        bool converged = false;
    };
    std::vector<std::string> keys(dirs.size());
    std::vector<Task> tasks;
    std::vector<std::size_t> task_of(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        keys[i] = strata(H, dirs[i]).key();
        std::size_t t = tasks.size();
        for (std::size_t j = 0; j < tasks.size(); ++j)
            if (tasks[j].key == keys[i]) { t = j; break; }
        if (t == tasks.size()) tasks.push_back({keys[i], i, {}, false});
        task_of[i] = t;
    }

    std::atomic<std::size_t> cursor{0};
    std::exception_ptr first_error;
    std::mutex err_mtx;
    auto worker = [&]() {
        for (;;) {
            std::size_t t = cursor.fetch_add(1);
            if (t >= tasks.size()) return;
            try {
                LocalizedHamiltonian loc = localize(H, dirs[tasks[t].rep]);
                DiscretizedOperator op = discretize(loc, g);
                try {
                    tasks[t].result = ground_energy(op, opt);
                    tasks[t].converged = true;
                } catch (const ConvergenceFailure& cf) {
                    tasks[t].result.value = cf.value;
                    tasks[t].result.residual = cf.residual;
                    tasks[t].result.iterations = cf.iters;
                    tasks[t].converged = false;
                }
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mtx);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    int nthreads = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int j = 1; j < nthreads; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);

    SpectralReport rep{g, {}, std::numeric_limits<double>::quiet_NaN(), false};
    rep.rows.reserve(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        const Task& t = tasks[task_of[i]];
        SpectralRow row;
        row.alpha = dirs[i].vector();
        row.signature = keys[i];
        row.c_alpha = t.result.value;
        row.residual = t.result.residual;
        row.iterations = t.result.iterations;
        row.converged = t.converged;
        rep.rows.push_back(std::move(row));
    }
    std::sort(rep.rows.begin(), rep.rows.end(),
              [](const SpectralRow& a, const SpectralRow& b) { return detail::lex_less(a.alpha, b.alpha); });

    double bottom = std::numeric_limits<double>::infinity();
    bool any = false;
    for (const SpectralRow& r : rep.rows) {
        if (!r.converged) { rep.incomplete = true; continue; }
        bottom = std::min(bottom, r.c_alpha);
        any = true;
    }
    rep.bottom = any ? bottom : std::numeric_limits<double>::quiet_NaN();
    return rep;
}

// spectrum of a localized operator fills [c, inf) up to grid resolution: inside
// the band (c + lo, c + lo + width) successive eigenvalue gaps stay within
// `factor` times the largest free-multiplier gap in the matching band
struct GapCheckResult {
    double max_gap = 0.0;
    double free_gap_scale = 0.0;
    bool pass = false;
};

inline GapCheckResult interval_gap_check(const DiscretizedOperator& A, double c_alpha,
                                         double lo = 0.1, double width = 1.0,
                                         double factor = 5.0, std::size_t dense_cap = 4096) {
    auto band_max_gap = [](std::vector<double> vals, double a, double b) {
        std::sort(vals.begin(), vals.end());
        double gap = 0.0;
        int count = 0;
        for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
            if (vals[i] < a || vals[i + 1] > b) continue;
            gap = std::max(gap, vals[i + 1] - vals[i]);
            ++count;
        }
        if (count == 0) throw OracleFailure("gap check band contains fewer than two eigenvalues");
        return gap;
    };
    std::vector<double> eigs = A.dense_eigenvalues(dense_cap);
    const Vec& m = A.multiplier();
    std::vector<double> mv(m.data(), m.data() + m.size());
    double mmin = *std::min_element(mv.begin(), mv.end());
    GapCheckResult r;
    r.max_gap = band_max_gap(eigs, c_alpha + lo, c_alpha + lo + width);
    r.free_gap_scale = band_max_gap(mv, mmin + lo, mmin + lo + width);
    r.pass = r.max_gap <= factor * r.free_gap_scale;
    return r;
}

namespace detail {

inline void require_momentum_lattice(const Grid& g, const Vec& p) {
    double step = M_PI / g.L;
    for (int i = 0; i < p.size(); ++i) {
        double m = p[i] / step;
        if (std::abs(m - std::round(m)) > 1e-9)
            throw InvalidInput("momentum vector is not on the grid momentum lattice");
    }
}

inline void require_position_lattice(const Grid& g, const Vec& q) {
    for (int i = 0; i < q.size(); ++i) {
        double m = q[i] / g.dx();
        if (std::abs(m - std::round(m)) > 1e-9)
            throw InvalidInput("translation vector is not on the grid position lattice");
    }
}

// 1 on the bulk |x_i| <= L/2, smooth cosine taper to 0 at |x_i| = 7L/8;
// confines norm estimates to the region where the torus represents the line
inline Vec bulk_window(const Grid& g) {
    double lo = g.L / 2.0, hi = 7.0 * g.L / 8.0;
    Vec w(g.total());
    for (std::size_t f = 0; f < g.total(); ++f) {
        Vec x = g.position_of(f);
        double v = 1.0;
        for (int i = 0; i < x.size(); ++i) {
            double t = (std::abs(x[i]) - lo) / (hi - lo);
            if (t >= 1.0) {
                v = 0.0;
                break;
            }
            if (t > 0.0) {
                double c = std::cos(0.5 * M_PI * t);
                v *= c * c;
            }
        }
        w[f] = v;
    }
    return w;
}

template <typename ApplyA, typename ApplyAStar>
double sp_commutator_norm(const Grid& g, const Vec& p, const ApplyA& A, const ApplyAStar& As,
                          int iterations) {
    require_momentum_lattice(g, p);
    CVec sp = ProductOperator::phase_position(g, p);
    auto C = [&](const CVec& f) -> CVec {
        CVec a = A(f);
        a.array() *= sp.array();
        CVec b = f;
        b.array() *= sp.array();
        return a - A(b);
    };
    auto Ct = [&](const CVec& f) -> CVec {
        CVec a = f;
        a.array() *= sp.array().conjugate();
        a = As(a);
        CVec b = As(f);
        b.array() *= sp.array().conjugate();
        return a - b;
    };
    return operator_norm_estimate(C, Ct, g.total(), iterations);
}

template <typename ApplyA, typename ApplyAStar>
double windowed_shift_defect(const Grid& g, const Vec& q, const ApplyA& A, const ApplyAStar& As,
                             int iterations) {
    require_position_lattice(g, q);
    CVec tq = ProductOperator::phase_momentum(g, q);
    Vec w = bulk_window(g);
    std::size_t n = std::size_t(g.n);
    auto shift = [&](CVec f, bool forward) {
        fft::transform_nd(f.data(), n, g.d, true);
        if (forward)
            f.array() *= tq.array();
        else
            f.array() *= tq.array().conjugate();
        fft::transform_nd(f.data(), n, g.d, false);
        return f;
    };
    auto one = [&](auto&& op, auto&& opstar) {
        auto M = [&](const CVec& f) -> CVec {
            CVec u = f;
            u.array() *= w.array();
            u = op(u);
            CVec s = shift(u, true) - u;
            s.array() *= w.array();
            return s;
        };
        auto Mt = [&](const CVec& f) -> CVec {
            CVec u = f;
            u.array() *= w.array();
            u = shift(u, false) - u;
            u = opstar(u);
            u.array() *= w.array();
            return u;
        };
        return operator_norm_estimate(M, Mt, g.total(), iterations);
    };
    return std::max(one(A, As), one(As, A));
}

} // namespace detail

inline double commutator_norm_Sp(const DiscretizedOperator& A, const Vec& p, int iterations = 50) {
    auto apply = [&A](const CVec& f) { return A.apply(f); };
    return detail::sp_commutator_norm(A.grid(), p, apply, apply, iterations);
}

inline double commutator_norm_Sp(const ProductOperator& A, const Vec& p, int iterations = 50) {
    auto apply = [&A](const CVec& f) { return A.apply(f); };
    auto applys = [&A](const CVec& f) { return A.apply_adjoint(f); };
    return detail::sp_commutator_norm(A.grid(), p, apply, applys, iterations);
}

inline double translation_defect(const DiscretizedOperator& A, const Vec& q, int iterations = 120) {
    auto apply = [&A](const CVec& f) { return A.apply(f); };
    return detail::windowed_shift_defect(A.grid(), q, apply, apply, iterations);
}

inline double translation_defect(const ProductOperator& A, const Vec& q, int iterations = 120) {
    auto apply = [&A](const CVec& f) { return A.apply(f); };
    auto applys = [&A](const CVec& f) { return A.apply_adjoint(f); };
    return detail::windowed_shift_defect(A.grid(), q, apply, applys, iterations);
}

// defect of T_{r alpha} phi(Q)psi(P) T_{r alpha}^* against phi_limit(alpha) psi(P)
// on localized test vectors; the sequence over radii decreases toward zero
struct QuotientCheckResult {
    std::vector<double> radii;
    std::vector<double> defects;
    double limit_value = 0.0;
};

inline QuotientCheckResult two_body_quotient_check(const RadialFn& phi,
                                                   const std::function<double(const Vec&)>& psi,
                                                   const Direction& alpha, const Grid& g,
                                                   const std::vector<double>& radii,
                                                   int n_vectors = 8, std::uint64_t seed = 99,
                                                   double envelope_sigma = 2.0) {
    if (phi.dim() != g.d || alpha.dim() != g.d)
        throw InvalidInput("two_body_quotient_check: dimension mismatch");
    for (double r : radii)
        if (!(r < g.L / 2.0)) throw RadiusTooLarge("radius must satisfy r < L/2");

    std::size_t N = g.total(), n = std::size_t(g.n);
    Vec phix(N);
    for (std::size_t f = 0; f < N; ++f) phix[f] = phi.eval(g.position_of(f));
    CVec psik = ProductOperator::momentum_samples(g, psi);
    double lim = phi.limit(alpha.vector());

    DetRng rng(seed);
    std::vector<CVec> vecs;
    for (int t = 0; t < n_vectors; ++t) {
        Vec v(N);
        for (std::size_t f = 0; f < N; ++f) {
            double r2 = g.position_of(f).squaredNorm();
            v[f] = std::exp(-r2 / (2.0 * envelope_sigma * envelope_sigma)) * rng.normal();
        }
        v /= v.norm();
        vecs.push_back(v.cast<std::complex<double>>());
    }

    auto fwd = [&](CVec f) {
        fft::transform_nd(f.data(), n, g.d, true);
        return f;
    };
    auto inv = [&](CVec f) {
        fft::transform_nd(f.data(), n, g.d, false);
        return f;
    };

    QuotientCheckResult out;
    out.limit_value = lim;
    for (double r : radii) {
        CVec sh = ProductOperator::phase_momentum(g, r * alpha.vector());
        double dmax = 0.0;
        for (const CVec& v : vecs) {
            CVec u = fwd(v);
            CVec target = u;
            target.array() *= psik.array();
            target = inv(target) * lim;
            u.array() *= sh.array().conjugate();
            u.array() *= psik.array();
            u = inv(u);
            u.array() *= phix.array().cast<std::complex<double>>();
            u = fwd(u);
            u.array() *= sh.array();
            u = inv(u);
            dmax = std::max(dmax, (u - target).norm());
        }
        out.radii.push_back(r);
        out.defects.push_back(dmax);
    }
    return out;
}

} // namespace specinf

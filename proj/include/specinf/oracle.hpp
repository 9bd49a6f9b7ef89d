#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "specinf/errors.hpp"
#include "specinf/hamiltonian.hpp"
#include "specinf/operators.hpp"

namespace specinf {

// counting-function edge detector: eigenvalues below the essential spectrum
// stay put when the box grows, eigenvalues above multiply with the volume
struct EdgeOptions {
    std::array<int, 2> box_factors{1, 2};
    double mesh = 0.01;
    double growth_threshold = 0.5;
    double scan_span = 6.0;
    std::size_t dense_cap = 4096;
    int jitter_retries = 5;
};

struct EdgeEstimate {
    double edge = std::numeric_limits<double>::quiet_NaN();
    bool found = false;
    double floor = std::numeric_limits<double>::quiet_NaN();
    std::array<double, 2> box_lengths{0.0, 0.0};
    std::vector<double> energies;
    std::vector<long> counts_small;
    std::vector<long> counts_large;
};

namespace detail {

// -Laplacian + V on the interior of [-L, L]^d, Dirichlet walls, fourth-order
// five-point stencil per axis clipped at the boundary
class FdBox {
public:
    FdBox(const Hamiltonian& H, double L, double dx, int retries) : retries_(retries) {
        int d = H.space().dim;
        long nint = std::lround(2.0 * L / dx);
        if (nint < 6) throw InvalidInput("FD box too coarse");
        long m = nint - 1;
        std::size_t total = 1;
        for (int ax = 0; ax < d; ++ax) total *= std::size_t(m);
        double c0 = (30.0 / 12.0) / (dx * dx);
        double c1 = (-16.0 / 12.0) / (dx * dx);
        double c2 = (1.0 / 12.0) / (dx * dx);

        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(total * std::size_t(4 * d + 1));
        std::vector<long> idx(static_cast<std::size_t>(d));
        Vec x(d);
        for (std::size_t f = 0; f < total; ++f) {
            std::size_t t = f;
            for (int ax = d - 1; ax >= 0; --ax) {
                idx[std::size_t(ax)] = long(t % std::size_t(m));
                t /= std::size_t(m);
            }
            for (int ax = 0; ax < d; ++ax) x[ax] = -L + dx * double(idx[std::size_t(ax)] + 1);
            double diag = double(d) * c0 + H.potential_at(x);
            trip.emplace_back(int(f), int(f), diag);
            std::size_t stride = 1;
            for (int ax = d - 1; ax >= 0; --ax) {
                long j = idx[std::size_t(ax)];
                if (j + 1 < m) trip.emplace_back(int(f), int(f + stride), c1);
                if (j - 1 >= 0) trip.emplace_back(int(f), int(f - stride), c1);
                if (j + 2 < m) trip.emplace_back(int(f), int(f + 2 * stride), c2);
                if (j - 2 >= 0) trip.emplace_back(int(f), int(f - 2 * stride), c2);
                stride *= std::size_t(m);
            }
        }
        mat_.resize(long(total), long(total));
        mat_.setFromTriplets(trip.begin(), trip.end());
        mat_.makeCompressed();
        id_.resize(long(total), long(total));
        id_.setIdentity();
    }

    long size() const { return mat_.rows(); }

    // inertia of H - E: the number of negative pivots equals N(E)
    long count_below(double E) const {
        double scale = std::max(1.0, std::abs(E));
        for (int attempt = 0; attempt <= retries_; ++attempt) {
            double jit = (attempt == 0) ? 0.0
                                        : scale * 1e-9 * double((attempt + 1) / 2) *
                                              (attempt % 2 == 1 ? 1.0 : -1.0);
            Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
            ldlt.compute(mat_ - (E + jit) * id_);
            if (ldlt.info() != Eigen::Success) continue;
            const Vec& D = ldlt.vectorD();
            double dmax = D.cwiseAbs().maxCoeff();
            bool clean = true;
            long neg = 0;
            for (long i = 0; i < D.size(); ++i) {
                if (!std::isfinite(D[i]) || std::abs(D[i]) < 1e-12 * dmax) {
                    clean = false;
                    break;
                }
                if (D[i] < 0.0) ++neg;
            }
            if (clean) return neg;
        }
        throw OracleFailure("factorization kept hitting degenerate pivots");
    }

private:
    Eigen::SparseMatrix<double> mat_;
    Eigen::SparseMatrix<double> id_;
    int retries_;
};

// dense counting for boxes discretized with the spectral method; used when the
// dispersion is not the plain quadratic form
class DenseBox {
public:
    DenseBox(const Hamiltonian& H, const Grid& g, std::size_t cap) {
        DiscretizedOperator op = discretize(H, g);
        eigs_ = op.dense_eigenvalues(cap);
        std::sort(eigs_.begin(), eigs_.end());
    }

    long count_below(double E) const {
        return long(std::lower_bound(eigs_.begin(), eigs_.end(), E) - eigs_.begin());
    }

    double min_eigenvalue() const { return eigs_.front(); }

private:
    std::vector<double> eigs_;
};

template <typename Box>
double bisect_min_eigenvalue(const Box& box, double lo_guess, double tol) {
    double lo = lo_guess;
    for (int k = 0; k < 60 && box.count_below(lo) > 0; ++k) lo -= std::max(1.0, std::abs(lo));
    if (box.count_below(lo) > 0) throw OracleFailure("no spectrum-free lower bound found");
    double hi = lo, step = 1.0;
    for (int k = 0; k < 60; ++k) {
        hi += step;
        step *= 2.0;
        if (box.count_below(hi) > 0) break;
        lo = hi;
        if (k == 59) throw OracleFailure("no eigenvalue found while expanding upward");
    }
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (box.count_below(mid) > 0)
            hi = mid;
        else
            lo = mid;
    }
    return lo;
}

template <typename Box>
EdgeEstimate edge_scan(const Box& small_box, const Box& large_box, double L1, double L2, int d,
                       double floor, const EdgeOptions& opt) {
    EdgeEstimate est;
    est.box_lengths = {L1, L2};
    est.floor = floor;
    double vol_growth = std::pow(L2 / L1, d) - 1.0;
    double start = opt.mesh * (std::floor(floor / opt.mesh) - 1.0);
    long steps = std::lround(opt.scan_span / opt.mesh);
    for (long j = 0; j <= steps; ++j) {
        double E = start + double(j) * opt.mesh;
        long n1 = small_box.count_below(E);
        long n2 = large_box.count_below(E);
        est.energies.push_back(E);
        est.counts_small.push_back(n1);
        est.counts_large.push_back(n2);
        if (n1 >= 1 && double(n2 - n1) >= opt.growth_threshold * vol_growth * double(n1)) {
            est.edge = E;
            est.found = true;
            break;
        }
    }
    return est;
}

} // namespace detail

inline EdgeEstimate brute_force_edge(const Hamiltonian& H, const Grid& base_grid,
                                     const EdgeOptions& opt = {}) {
    int f1 = opt.box_factors[0], f2 = opt.box_factors[1];
    if (f1 < 1 || f2 <= f1) throw InvalidInput("box factors must be increasing positive integers");
    int d = H.space().dim;
    double L1 = f1 * base_grid.L, L2 = f2 * base_grid.L;
    double dx = base_grid.dx();
    double ftol = opt.mesh / 4.0;

    if (H.dispersion().is_quadratic()) {
        detail::FdBox b1(H, L1, dx, opt.jitter_retries);
        detail::FdBox b2(H, L2, dx, opt.jitter_retries);
        // the discrete kinetic part is positive semidefinite, so the spectrum
        // lies above -sup|V|
        double floor = detail::bisect_min_eigenvalue(b2, -H.potential_sup_bound() - 1.0, ftol);
        return detail::edge_scan(b1, b2, L1, L2, d, floor, opt);
    }

    auto box_grid = [&](int f) {
        int n = f * base_grid.n;
        if (!fft::is_pow2(std::size_t(n)))
            throw InvalidInput("dense edge fallback needs power-of-two box factors");
        return Grid(d, f * base_grid.L, n);
    };
    detail::DenseBox b1(H, box_grid(f1), opt.dense_cap);
    detail::DenseBox b2(H, box_grid(f2), opt.dense_cap);
    return detail::edge_scan(b1, b2, L1, L2, d, b2.min_eigenvalue(), opt);
}

} // namespace specinf

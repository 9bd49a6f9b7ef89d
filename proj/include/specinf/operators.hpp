#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <functional>
#include <vector>

#include "specinf/errors.hpp"
#include "specinf/fft.hpp"
#include "specinf/grid.hpp"
#include "specinf/hamiltonian.hpp"
#include "specinf/rng.hpp"

namespace specinf {

using CVec = Eigen::VectorXcd;

// h(P) + V(Q) on the periodic grid, matrix-free: apply = F^-1(M Fpsi) + V psi.
// The multiplier carries any localization offset. When the multiplier is even
// under k -> -k the operator maps real vectors to real vectors, which the
// Lanczos solver exploits.
class DiscretizedOperator {
public:
    DiscretizedOperator(Grid grid, Vec multiplier, Vec potential)
        : grid_(grid), mult_(std::move(multiplier)), pot_(std::move(potential)) {
        if (std::size_t(mult_.size()) != grid_.total() ||
            std::size_t(pot_.size()) != grid_.total())
            throw InvalidInput("DiscretizedOperator: array sizes must match the grid");
        diagonal_ = (pot_.cwiseAbs().maxCoeff() == 0.0);
        even_ = check_even();
    }

    const Grid& grid() const { return grid_; }
    const Vec& multiplier() const { return mult_; }
    const Vec& potential() const { return pot_; }
    std::size_t size() const { return grid_.total(); }
    bool diagonal_in_fourier() const { return diagonal_; }
    bool real_invariant() const { return even_; }

    CVec apply(const CVec& psi) const {
        if (std::size_t(psi.size()) != size()) throw InvalidInput("apply: size mismatch");
        CVec w = psi;
        fft::transform_nd(w.data(), std::size_t(grid_.n), grid_.d, true);
        w.array() *= mult_.array();
        fft::transform_nd(w.data(), std::size_t(grid_.n), grid_.d, false);
        w.array() += pot_.array().cast<std::complex<double>>() * psi.array();
        return w;
    }

    // valid when real_invariant(); imaginary roundoff is discarded
    Vec apply_real(const Vec& psi) const {
        CVec w = psi.cast<std::complex<double>>();
        fft::transform_nd(w.data(), std::size_t(grid_.n), grid_.d, true);
        w.array() *= mult_.array();
        fft::transform_nd(w.data(), std::size_t(grid_.n), grid_.d, false);
        return w.real() + pot_.cwiseProduct(psi);
    }

    double min_multiplier() const { return mult_.minCoeff(); }

    // dense matrix assembled column-by-column; real symmetric when the
    // multiplier is even, otherwise complex Hermitian
    Eigen::MatrixXd dense_real(std::size_t cap = 4096) const {
        if (!even_) throw InvalidInput("dense_real: multiplier is not even under k -> -k");
        std::size_t N = size();
        if (N > cap) throw OracleFailure("dense matrix dimension exceeds cap");
        Eigen::MatrixXd A(N, N);
        Vec e = Vec::Zero(N);
        for (std::size_t j = 0; j < N; ++j) {
            e[j] = 1.0;
            A.col(j) = apply_real(e);
            e[j] = 0.0;
        }
        return A;
    }

    std::vector<double> dense_eigenvalues(std::size_t cap = 4096) const {
        std::size_t N = size();
        if (diagonal_) {
            // exact spectrum of a pure Fourier multiplier
            std::vector<double> vals(mult_.data(), mult_.data() + N);
            std::sort(vals.begin(), vals.end());
            return vals;
        }
        if (N > cap) throw OracleFailure("dense eigensolve dimension exceeds cap");
        if (even_) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_real(cap),
                                                              Eigen::EigenvaluesOnly);
            return {es.eigenvalues().data(), es.eigenvalues().data() + N};
        }
        Eigen::MatrixXcd A(N, N);
        CVec e = CVec::Zero(N);
        for (std::size_t j = 0; j < N; ++j) {
            e[j] = 1.0;
            A.col(j) = apply(e);
            e[j] = 0.0;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A, Eigen::EigenvaluesOnly);
        return {es.eigenvalues().data(), es.eigenvalues().data() + N};
    }

private:
    bool check_even() const {
        // pair each momentum index with its reflection mod n per axis
        std::size_t N = size();
        int n = grid_.n, d = grid_.d;
        for (std::size_t f = 0; f < N; ++f) {
            std::size_t r = 0, t = f;
            // build reflected flat index axis by axis (row-major)
            std::vector<int> idx(d);
            for (int ax = d - 1; ax >= 0; --ax) {
                idx[ax] = int(t % n);
                t /= n;
            }
            for (int ax = 0; ax < d; ++ax) {
                int j = idx[ax] == 0 ? 0 : n - idx[ax];
                r = r * n + std::size_t(j);
            }
            if (mult_[f] != mult_[r]) return false;
        }
        return true;
    }

    Grid grid_;
    Vec mult_;
    Vec pot_;
    bool diagonal_;
    bool even_;
};

inline DiscretizedOperator discretize(const Dispersion& h, const std::vector<PotentialTerm>& terms,
                                      double offset, const Grid& g) {
    if (h.dim() != g.d) throw InvalidInput("discretize: dimension mismatch");
    std::size_t N = g.total();
    Vec mult(N), pot = Vec::Zero(N);
    for (std::size_t f = 0; f < N; ++f) {
        double v = h(g.momentum_of(f));
        if (!std::isfinite(v))
            throw InvalidInput("discretize: dispersion non-finite at a lattice momentum");
        mult[f] = v + offset;
    }
    for (const PotentialTerm& t : terms) {
        if (t.subspace().ambient_dim() != g.d) throw InvalidInput("discretize: term dimension mismatch");
        for (std::size_t f = 0; f < N; ++f) pot[f] += eval_term(t, g.position_of(f));
    }
    return DiscretizedOperator(g, std::move(mult), std::move(pot));
}

inline DiscretizedOperator discretize(const Hamiltonian& H, const Grid& g) {
    return discretize(H.dispersion(), H.terms(), 0.0, g);
}

inline DiscretizedOperator discretize(const LocalizedHamiltonian& H, const Grid& g) {
    return discretize(H.dispersion(), H.terms(), H.offset(), g);
}

// bounded operators built from layers diagonal in position or momentum,
// e.g. phi(Q)psi(P), S_p, T_q and their products; supports the adjoint
class ProductOperator {
public:
    enum class Rep { Position, Momentum };

    struct Layer {
        Rep rep;
        CVec diag;
    };

    explicit ProductOperator(Grid grid) : grid_(grid) {}

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return grid_.total(); }

    // push order reads as the operator product left to right;
    // the last factor pushed touches the state first
    ProductOperator& push_factor(Rep rep, CVec diag) {
        if (std::size_t(diag.size()) != grid_.total())
            throw InvalidInput("ProductOperator: diagonal size mismatch");
        layers_.push_back({rep, std::move(diag)});
        return *this;
    }

    static CVec position_samples(const Grid& g, const std::function<double(const Vec&)>& f) {
        CVec v(g.total());
        for (std::size_t i = 0; i < g.total(); ++i) v[i] = f(g.position_of(i));
        return v;
    }

    static CVec momentum_samples(const Grid& g, const std::function<double(const Vec&)>& f) {
        CVec v(g.total());
        for (std::size_t i = 0; i < g.total(); ++i) v[i] = f(g.momentum_of(i));
        return v;
    }

    // multiplication by e^{i p.x}
    static CVec phase_position(const Grid& g, const Vec& p) {
        CVec v(g.total());
        for (std::size_t i = 0; i < g.total(); ++i) {
            double ph = p.dot(g.position_of(i));
            v[i] = std::complex<double>(std::cos(ph), std::sin(ph));
        }
        return v;
    }

    // translation (T_q f)(x) = f(x+q): multiplier e^{i k.q} in momentum space
    static CVec phase_momentum(const Grid& g, const Vec& q) {
        CVec v(g.total());
        for (std::size_t i = 0; i < g.total(); ++i) {
            double ph = g.momentum_of(i).dot(q);
            v[i] = std::complex<double>(std::cos(ph), std::sin(ph));
        }
        return v;
    }

    CVec apply(CVec psi) const {
        Rep cur = Rep::Position;
        for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
            to_rep(psi, cur, it->rep);
            psi.array() *= it->diag.array();
            cur = it->rep;
        }
        to_rep(psi, cur, Rep::Position);
        return psi;
    }

    CVec apply_adjoint(CVec psi) const {
        Rep cur = Rep::Position;
        for (auto it = layers_.begin(); it != layers_.end(); ++it) {
            to_rep(psi, cur, it->rep);
            psi.array() *= it->diag.array().conjugate();
            cur = it->rep;
        }
        to_rep(psi, cur, Rep::Position);
        return psi;
    }

private:
    void to_rep(CVec& psi, Rep from, Rep to) const {
        if (from == to) return;
        fft::transform_nd(psi.data(), std::size_t(grid_.n), grid_.d, to == Rep::Momentum);
    }

    Grid grid_;
    std::vector<Layer> layers_;
};

// power iteration on C*C; fixed iteration count, deterministic seeded start
inline double operator_norm_estimate(const std::function<CVec(const CVec&)>& apply,
                                     const std::function<CVec(const CVec&)>& apply_adjoint,
                                     std::size_t n, int iterations = 50,
                                     std::uint64_t seed = 20240901) {
    DetRng rng(seed);
    CVec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::complex<double>(rng.normal(), rng.normal());
    v /= v.norm();
    double s = 0.0;
    for (int it = 0; it < iterations; ++it) {
        CVec w = apply_adjoint(apply(v));
        s = w.norm();
        if (s == 0.0) return 0.0;
        v = w / s;
    }
    return std::sqrt(s);
}

} // namespace specinf

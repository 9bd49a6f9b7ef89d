#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "specinf/errors.hpp"
#include "specinf/operators.hpp"
#include "specinf/rng.hpp"

namespace specinf {

struct LanczosResult {
    double value = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct LanczosOptions {
    double tol = 1e-10;
    int max_iter = 800;
    std::uint64_t seed = 7;
    int check_every = 25;
};

namespace detail {

// smallest Ritz value of the tridiagonal (alpha, beta) and the matching
// bottom component of its eigenvector, used as the residual estimate
inline void tridiag_bottom(const std::vector<double>& alpha, const std::vector<double>& beta,
                           double& ritz, double& tail) {
    int m = int(alpha.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) T(i, i) = alpha[std::size_t(i)];
    for (int i = 0; i + 1 < m; ++i) T(i, i + 1) = T(i + 1, i) = beta[std::size_t(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    ritz = es.eigenvalues()[0];
    tail = std::abs(es.eigenvectors()(m - 1, 0));
}

inline Eigen::VectorXd tridiag_ground_vector(const std::vector<double>& alpha,
                                             const std::vector<double>& beta) {
    int m = int(alpha.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) T(i, i) = alpha[std::size_t(i)];
    for (int i = 0; i + 1 < m; ++i) T(i, i + 1) = T(i + 1, i) = beta[std::size_t(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    return es.eigenvectors().col(0);
}

// full Lanczos with two-pass classical Gram-Schmidt reorthogonalization;
// Scalar is double (even multiplier) or complex
template <typename Scalar, typename Apply>
LanczosResult lanczos_run(const Apply& apply, std::size_t N, const LanczosOptions& opt) {
    using VecS = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using MatS = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    DetRng rng(opt.seed);
    VecS v(N);
    for (std::size_t i = 0; i < N; ++i) {
        if constexpr (std::is_same_v<Scalar, double>)
            v[i] = rng.normal();
        else
            v[i] = Scalar(rng.normal(), rng.normal());
    }
    v /= v.norm();

    int cap = std::min<int>(opt.max_iter, int(N));
    MatS Q(N, cap);
    Q.col(0) = v;
    std::vector<double> alpha, beta;
    alpha.reserve(std::size_t(cap));
    beta.reserve(std::size_t(cap));

    double best_ritz = 0.0, best_tail = 1.0;
    for (int m = 1; m <= cap; ++m) {
        VecS w = apply(Q.col(m - 1));
        Scalar a = Q.col(m - 1).dot(w);
        alpha.push_back(std::real(a));
        w -= Q.leftCols(m) * (Q.leftCols(m).adjoint() * w);
        w -= Q.leftCols(m) * (Q.leftCols(m).adjoint() * w);
        double b = w.norm();

        bool lucky = b < 1e-13 * (1.0 + std::abs(alpha.back()));
        if (m % opt.check_every == 0 || m == cap || lucky) {
            tridiag_bottom(alpha, beta, best_ritz, best_tail);
            if (b * best_tail <= opt.tol * (1.0 + std::abs(best_ritz)) || lucky) break;
        }
        if (m == cap) break;
        beta.push_back(b);
        Q.col(m) = w / b;
    }

    int used = int(alpha.size());
    Eigen::VectorXd y = tridiag_ground_vector(alpha, beta);
    VecS psi = Q.leftCols(used) * y.cast<Scalar>();
    psi /= psi.norm();
    VecS Apsi = apply(psi);
    double lam = std::real(psi.dot(Apsi));
    double res = (Apsi - Scalar(lam) * psi).norm();

    LanczosResult r;
    r.value = lam;
    r.residual = res;
    r.iterations = used;
    r.converged = res <= opt.tol * (1.0 + std::abs(lam));
    return r;
}

} // namespace detail

// smallest eigenvalue of a discretized operator; diagonal operators are
// resolved exactly without iteration
inline LanczosResult ground_energy(const DiscretizedOperator& A, const LanczosOptions& opt = {}) {
    if (A.diagonal_in_fourier()) {
        LanczosResult r;
        r.value = A.min_multiplier();
        r.residual = 0.0;
        r.iterations = 0;
        r.converged = true;
        return r;
    }
    std::size_t N = A.size();
    LanczosResult r;
    if (A.real_invariant()) {
        auto apply = [&A](const Eigen::Ref<const Vec>& x) { return A.apply_real(x); };
        r = detail::lanczos_run<double>(apply, N, opt);
    } else {
        auto apply = [&A](const Eigen::Ref<const CVec>& x) { return A.apply(CVec(x)); };
        r = detail::lanczos_run<std::complex<double>>(apply, N, opt);
    }
    if (!r.converged)
        throw ConvergenceFailure("ground energy iteration hit its cap before the residual target",
                                 r.value, r.residual, r.iterations);
    return r;
}

} // namespace specinf

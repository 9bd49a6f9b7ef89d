#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "specinf/errors.hpp"

// Euclidean realization of the ambient space X = R^d: subspaces carry an
// orthonormal basis, quotients X/Y are realized on the orthogonal complement
// Y-perp, whose basis is completed deterministically (Gram-Schmidt over the
// standard basis in index order) so coordinates are reproducible run to run.

namespace specinf {

inline constexpr double kGeomTol = 1e-12;     // membership / orthonormality
inline constexpr double kDropTol = 1e-10;     // dependent-vector drop

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Space {
    int dim;
    explicit Space(int d) : dim(d) {
        if (d < 1) throw InvalidInput("Space: dimension must be >= 1");
    }
};

namespace detail {

inline void check_finite(const Vec& v, const char* what) {
    if (!v.allFinite()) throw InvalidInput(std::string(what) + ": non-finite entries");
}

// append to `cols` the part of v orthogonal to all current columns, if it
// survives the drop tolerance (relative to the input norm)
inline bool gs_append(std::vector<Vec>& cols, const Vec& v) {
    Vec r = v;
    for (const Vec& c : cols) r -= c.dot(r) * c;
    for (const Vec& c : cols) r -= c.dot(r) * c;   // second pass for stability
    double scale = std::max(v.norm(), 1.0);
    if (r.norm() < kDropTol * scale) return false;
    cols.push_back(r.normalized());
    return true;
}

} // namespace detail

class Subspace {
public:
    Subspace(int ambient_dim, Mat orthonormal_basis)
        : d_(ambient_dim), basis_(std::move(orthonormal_basis)) {
        if (d_ < 1) throw InvalidInput("Subspace: ambient dimension must be >= 1");
        if (basis_.size() == 0) basis_ = Mat(d_, 0);
        if (basis_.rows() != d_) throw InvalidInput("Subspace: basis rows != ambient dim");
        if (basis_.cols() > d_) throw InvalidInput("Subspace: more basis vectors than ambient dim");
        Mat gram = basis_.transpose() * basis_;
        if (basis_.cols() > 0 &&
            (gram - Mat::Identity(basis_.cols(), basis_.cols())).cwiseAbs().maxCoeff() > kGeomTol)
            throw InvalidInput("Subspace: basis not orthonormal to 1e-12");
        build_complement();
    }

    static Subspace zero(int ambient_dim) { return Subspace(ambient_dim, Mat(ambient_dim, 0)); }

    static Subspace full(int ambient_dim) {
        return Subspace(ambient_dim, Mat::Identity(ambient_dim, ambient_dim));
    }

    int ambient_dim() const { return d_; }
    int dim() const { return int(basis_.cols()); }
    int codim() const { return d_ - dim(); }
    const Mat& basis() const { return basis_; }
    const Mat& complement_basis() const { return comp_; }

    Vec project_onto(const Vec& x) const { return basis_ * (basis_.transpose() * x); }

    // ambient lift of complement coordinates (isometric section of pi_Y)
    Vec lift_complement(const Vec& coords) const {
        if (coords.size() != codim()) throw InvalidInput("lift_complement: coordinate size mismatch");
        return comp_ * coords;
    }

    bool same_span(const Subspace& other) const {
        if (other.d_ != d_ || other.dim() != dim()) return false;
        for (int c = 0; c < basis_.cols(); ++c) {
            Vec v = basis_.col(c);
            if ((v - other.project_onto(v)).norm() > 1e-9) return false;
        }
        return true;
    }

private:
    void build_complement() {
        std::vector<Vec> cols;
        cols.reserve(d_);
        for (int c = 0; c < basis_.cols(); ++c) cols.push_back(basis_.col(c));
        std::size_t k = cols.size();
        for (int i = 0; i < d_ && int(cols.size()) < d_; ++i)
            detail::gs_append(cols, Vec::Unit(d_, i));
        comp_ = Mat(d_, d_ - int(k));
        for (std::size_t c = k; c < cols.size(); ++c) comp_.col(int(c - k)) = cols[c];
    }

    int d_;
    Mat basis_;
    Mat comp_;
};

class Direction {
public:
    explicit Direction(Vec v) : a_(std::move(v)) {
        detail::check_finite(a_, "Direction");
        double n = a_.norm();
        if (n < kGeomTol) throw InvalidInput("Direction: zero vector has no direction");
        a_ /= n;
    }

    int dim() const { return int(a_.size()); }
    const Vec& vector() const { return a_; }

    bool approx_equal(const Direction& other, double tol = kGeomTol) const {
        return other.dim() == dim() && (a_ - other.a_).norm() <= tol;
    }

private:
    Vec a_;
};

inline Subspace orthonormalize(const std::vector<Vec>& vectors, int ambient_dim) {
    std::vector<Vec> cols;
    for (const Vec& v : vectors) {
        if (v.size() != ambient_dim) throw InvalidInput("orthonormalize: dimension mismatch");
        detail::check_finite(v, "orthonormalize");
        detail::gs_append(cols, v);
    }
    Mat b(ambient_dim, int(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) b.col(int(c)) = cols[c];
    return Subspace(ambient_dim, std::move(b));
}

inline Vec project_quotient(const Subspace& Y, const Vec& x) {
    if (x.size() != Y.ambient_dim()) throw InvalidInput("project_quotient: dimension mismatch");
    return Y.complement_basis().transpose() * x;
}

inline bool contains_direction(const Subspace& Y, const Direction& alpha) {
    if (alpha.dim() != Y.ambient_dim()) throw InvalidInput("contains_direction: dimension mismatch");
    return (alpha.vector() - Y.project_onto(alpha.vector())).norm() < kGeomTol;
}

inline Direction quotient_direction(const Subspace& Y, const Direction& alpha) {
    if (alpha.dim() != Y.ambient_dim()) throw InvalidInput("quotient_direction: dimension mismatch");
    Vec z = project_quotient(Y, alpha.vector());
    if (z.norm() < kGeomTol)
        throw UndefinedQuotientDirection("quotient_direction: direction lies in the subspace");
    return Direction(z);
}

class DirectionChain {
public:
    DirectionChain(int ambient_dim, std::vector<Direction> dirs)
        : d_(ambient_dim), dirs_(std::move(dirs)) {
        if (int(dirs_.size()) > d_) throw InvalidInput("DirectionChain: more directions than dimensions");
        for (std::size_t i = 0; i < dirs_.size(); ++i) {
            if (dirs_[i].dim() != d_) throw InvalidInput("DirectionChain: dimension mismatch");
            for (std::size_t j = 0; j < i; ++j)
                if (std::abs(dirs_[i].vector().dot(dirs_[j].vector())) > kGeomTol)
                    throw InvalidInput("DirectionChain: directions must be pairwise orthogonal");
        }
    }

    static DirectionChain empty(int ambient_dim) { return DirectionChain(ambient_dim, {}); }

    int ambient_dim() const { return d_; }
    int length() const { return int(dirs_.size()); }
    const std::vector<Direction>& directions() const { return dirs_; }

private:
    int d_;
    std::vector<Direction> dirs_;
};

inline Subspace chain_subspace(const DirectionChain& c) {
    Mat b(c.ambient_dim(), c.length());
    for (int i = 0; i < c.length(); ++i) b.col(i) = c.directions()[i].vector();
    return Subspace(c.ambient_dim(), std::move(b));
}

} // namespace specinf

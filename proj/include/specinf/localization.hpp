#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "specinf/errors.hpp"
#include "specinf/geometry.hpp"
#include "specinf/hamiltonian.hpp"
#include "specinf/potential.hpp"

// Localization at infinity: the endomorphism tau_alpha on potential terms,
// algebra elements and Hamiltonians; chain composition; character evaluation;
// stratification of the sphere at infinity by term containment.

namespace specinf {

// dichotomy: alpha inside Y keeps the term, otherwise the term collapses to
// the constant radial limit of v along the quotient image of alpha
inline PotentialTerm tau_alpha_term(const PotentialTerm& t, const Direction& alpha) {
    if (contains_direction(t.subspace(), alpha)) return t;
    double c = t.function().limit(quotient_direction(t.subspace(), alpha).vector());
    int d = t.subspace().ambient_dim();
    return PotentialTerm(Subspace::full(d), RadialFn::constant(0, c));
}

inline LocalizedHamiltonian localize(const Hamiltonian& H, const Direction& alpha) {
    if (alpha.dim() != H.dim()) throw InvalidInput("localize: direction dimension mismatch");
    std::vector<PotentialTerm> surviving;
    double offset = 0.0;
    for (const PotentialTerm& t : H.terms()) {
        PotentialTerm r = tau_alpha_term(t, alpha);
        if (r.function().is_constant())
            offset += r.function().constant_value();
        else
            surviving.push_back(std::move(r));
    }
    return LocalizedHamiltonian(H.space(), H.dispersion(), std::move(surviving), offset, alpha);
}

inline AlgebraElement tau_alpha_elem(const AlgebraElement& u, const Direction& alpha) {
    AlgebraElement r(u.ambient_dim());
    for (const AlgebraElement::Monomial& m : u.monomials()) {
        AlgebraElement mono = AlgebraElement::constant(u.ambient_dim(), m.coeff);
        for (const PotentialTerm& t : m.factors)
            mono = mono * AlgebraElement::generator(tau_alpha_term(t, alpha));
        r = r + mono;
    }
    return r;
}

// left-to-right composition tau_{alpha_n} ... tau_{alpha_1); chain directions
// are ambient pairwise-orthogonal representatives, and for a generator that
// survived step i (so [alpha_1..alpha_i] lies in Y) the containment and
// quotient-limit tests for alpha_{i+1} computed in the ambient space agree
// with the same tests computed in the realized quotient
inline AlgebraElement tau_chain(const AlgebraElement& u, const DirectionChain& c) {
    AlgebraElement r = u;
    for (const Direction& a : c.directions()) r = tau_alpha_elem(r, a);
    return r;
}

struct Character {
    DirectionChain chain;
    Vec point;   // coordinates in the realized quotient X / [chain]

    Character(DirectionChain ch, Vec pt) : chain(std::move(ch)), point(std::move(pt)) {
        if (int(point.size()) != chain.ambient_dim() - chain.length())
            throw InvalidInput("Character: point dimension must be ambient dim minus chain length");
    }
};

inline double evaluate_character(const AlgebraElement& u, const Character& kappa) {
    if (u.ambient_dim() != kappa.chain.ambient_dim())
        throw InvalidInput("evaluate_character: dimension mismatch");
    AlgebraElement t = tau_chain(u, kappa.chain);
    Vec x = chain_subspace(kappa.chain).lift_complement(kappa.point);
    return t.eval(x);
}

// containment signature of a direction: which terms keep their subspace, and
// the constant limits produced by the others; identical signatures (including
// constants) give structurally identical localized Hamiltonians
struct StratumSignature {
    std::vector<int> containing;       // indices of terms with alpha inside Y
    std::vector<double> constants;     // per non-containing term, in index order

    std::string key() const {
        std::string s = "c:";
        for (int i : containing) s += std::to_string(i) + ",";
        s += "|v:";
        for (double v : constants) s += detail::fmt_g(v) + ",";
        return s;
    }

    bool operator==(const StratumSignature& o) const {
        return containing == o.containing && constants == o.constants;
    }
};

inline StratumSignature strata(const Hamiltonian& H, const Direction& alpha) {
    StratumSignature sig;
    for (std::size_t i = 0; i < H.terms().size(); ++i) {
        const PotentialTerm& t = H.terms()[i];
        if (contains_direction(t.subspace(), alpha)) {
            sig.containing.push_back(int(i));
        } else {
            sig.constants.push_back(
                t.function().limit(quotient_direction(t.subspace(), alpha).vector()));
        }
    }
    return sig;
}

namespace detail {

// intersection of two subspaces via the null space of (I - P_B) restricted to A
inline Subspace intersect(const Subspace& A, const Subspace& B) {
    int d = A.ambient_dim();
    if (A.dim() == 0 || B.dim() == 0) return Subspace::zero(d);
    Mat M = A.basis() - B.basis() * (B.basis().transpose() * A.basis());
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
    std::vector<Vec> keep;
    for (int i = 0; i < svd.matrixV().cols(); ++i) {
        double sv = (i < svd.singularValues().size()) ? svd.singularValues()[i] : 0.0;
        if (sv < 1e-10) {
            Vec v = A.basis() * svd.matrixV().col(i);
            keep.push_back(v);
        }
    }
    return orthonormalize(keep, d);
}

inline bool direction_listed(const std::vector<Direction>& ds, const Direction& a) {
    for (const Direction& e : ds)
        if (e.approx_equal(a, 1e-9)) return true;
    return false;
}

} // namespace detail

// deterministic sampler: representatives interior to every stratum of the
// subspace arrangement, then a quasi-uniform mesh filling the budget
inline std::vector<Direction> direction_sampler(const Hamiltonian& H, int budget) {
    const int d = H.dim();

    if (d == 1) {
        if (budget < 2) throw InsufficientBudget("direction_sampler: d=1 needs budget >= 2", 2);
        return {Direction(Vec::Ones(1)), Direction(-Vec::Ones(1))};
    }

    // close the set of term subspaces under intersection
    std::vector<Subspace> arr;
    for (const PotentialTerm& t : H.terms()) {
        const Subspace& Y = t.subspace();
        if (Y.dim() == 0) continue;
        bool dup = false;
        for (const Subspace& W : arr) dup = dup || W.same_span(Y);
        if (!dup) arr.push_back(Y);
    }
    for (std::size_t grow = 0; grow < arr.size(); ++grow) {
        std::vector<Subspace> add;
        for (std::size_t i = 0; i < arr.size(); ++i)
            for (std::size_t j = i + 1; j < arr.size(); ++j) {
                Subspace w = detail::intersect(arr[i], arr[j]);
                if (w.dim() == 0) continue;
                bool dup = false;
                for (const Subspace& W : arr) dup = dup || W.same_span(w);
                for (const Subspace& W : add) dup = dup || W.same_span(w);
                if (!dup) add.push_back(std::move(w));
            }
        if (add.empty()) break;
        for (Subspace& w : add) arr.push_back(std::move(w));
    }

    std::vector<Direction> reps;
    for (const Subspace& W : arr) {
        for (int c = 0; c < W.basis().cols(); ++c) {
            for (double sgn : {1.0, -1.0}) {
                Direction a(sgn * W.basis().col(c));
                if (!detail::direction_listed(reps, a)) reps.push_back(std::move(a));
            }
        }
        if (W.dim() >= 2) {
            Vec s = W.basis().rowwise().sum();
            if (s.norm() > 1e-9) {
                for (double sgn : {1.0, -1.0}) {
                    Direction a(sgn * s);
                    if (!detail::direction_listed(reps, a)) reps.push_back(std::move(a));
                }
            }
        }
    }

    int required = std::max<int>(1, int(reps.size()));
    if (budget < required)
        throw InsufficientBudget(
            "direction_sampler: budget " + std::to_string(budget) + " below required stratum count " +
                std::to_string(required),
            required);

    std::vector<Direction> out = reps;
    int mesh = budget - int(reps.size());
    if (d == 2) {
        for (int i = 0; i < mesh; ++i) {
            double th = 2.0 * M_PI * double(i) / double(std::max(mesh, 1));
            Vec v(2);
            v << std::cos(th), std::sin(th);
            Direction a(v);
            if (!detail::direction_listed(out, a)) out.push_back(std::move(a));
        }
    } else if (d == 3) {
        const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
        for (int i = 0; i < mesh; ++i) {
            double z = 1.0 - 2.0 * (double(i) + 0.5) / double(std::max(mesh, 1));
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            double th = 2.0 * M_PI * double(i) / golden;
            Vec v(3);
            v << r * std::cos(th), r * std::sin(th), z;
            Direction a(v);
            if (!detail::direction_listed(out, a)) out.push_back(std::move(a));
        }
    } else {
        // product-of-angles grid in hyperspherical coordinates
        int per_axis = std::max(2, int(std::ceil(std::pow(double(mesh), 1.0 / double(d - 1)))));
        std::vector<int> idx(d - 1, 0);
        while (int(out.size()) < budget) {
            std::vector<double> ang(d - 1);
            for (int a = 0; a < d - 2; ++a) ang[a] = M_PI * (idx[a] + 0.5) / per_axis;
            ang[d - 2] = 2.0 * M_PI * idx[d - 2] / per_axis;
            Vec v(d);
            double sines = 1.0;
            for (int a = 0; a < d - 1; ++a) {
                v[a] = sines * std::cos(ang[a]);
                sines *= std::sin(ang[a]);
            }
            v[d - 1] = sines;
            Direction a(v);
            if (!detail::direction_listed(out, a)) out.push_back(std::move(a));
            int carry = d - 2;
            while (carry >= 0 && ++idx[carry] >= per_axis) idx[carry--] = 0;
            if (carry < 0) break;
        }
    }
    return out;
}

} // namespace specinf

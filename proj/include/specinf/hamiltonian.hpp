#pragma once

#include <string>
#include <vector>

#include "specinf/dispersion.hpp"
#include "specinf/errors.hpp"
#include "specinf/potential.hpp"

namespace specinf {

class Hamiltonian {
public:
    Hamiltonian(Space space, Dispersion h, std::vector<PotentialTerm> terms)
        : space_(space), h_(std::move(h)), terms_(std::move(terms)) {
        if (h_.dim() != space_.dim) throw InvalidInput("Hamiltonian: dispersion dimension mismatch");
        for (const PotentialTerm& t : terms_)
            if (t.subspace().ambient_dim() != space_.dim)
                throw InvalidInput("Hamiltonian: term ambient dimension mismatch");
    }

    const Space& space() const { return space_; }
    const Dispersion& dispersion() const { return h_; }
    const std::vector<PotentialTerm>& terms() const { return terms_; }
    int dim() const { return space_.dim; }

    double potential_at(const Vec& x) const {
        double s = 0;
        for (const PotentialTerm& t : terms_) s += eval_term(t, x);
        return s;
    }

    double potential_sup_bound() const {
        double s = 0;
        for (const PotentialTerm& t : terms_) s += sup_norm_estimate(t);
        return s;
    }

private:
    Space space_;
    Dispersion h_;
    std::vector<PotentialTerm> terms_;
};

// result of localizing at a direction: surviving terms + accumulated constant
class LocalizedHamiltonian {
public:
    LocalizedHamiltonian(Space space, Dispersion h, std::vector<PotentialTerm> surviving,
                         double offset, Direction alpha)
        : base_(space, std::move(h), std::move(surviving)), offset_(offset),
          alpha_(std::move(alpha)) {}

    const Hamiltonian& base() const { return base_; }
    const std::vector<PotentialTerm>& terms() const { return base_.terms(); }
    const Dispersion& dispersion() const { return base_.dispersion(); }
    double offset() const { return offset_; }
    const Direction& direction() const { return alpha_; }
    int dim() const { return base_.dim(); }

private:
    Hamiltonian base_;
    double offset_;
    Direction alpha_;
};

// form-bound table entries: for bounded multiplication potentials the h(P)
// coefficient is 0 and the constant is the sup-norm bound
struct FormBoundRow {
    int term_index;
    double mu;
    double nu;
};

inline std::vector<FormBoundRow> form_bound_check(const Hamiltonian& H) {
    std::vector<FormBoundRow> rows;
    for (std::size_t i = 0; i < H.terms().size(); ++i)
        rows.push_back({int(i), 0.0, sup_norm_estimate(H.terms()[i])});
    return rows;
}

inline bool form_bounds_admissible(const std::vector<FormBoundRow>& rows) {
    double s = 0;
    for (const FormBoundRow& r : rows) s += r.mu;
    return s < 1.0;
}

} // namespace specinf

#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "specinf/errors.hpp"
#include "specinf/geometry.hpp"
#include "specinf/radial_function.hpp"

// Potential terms V_Y = v(pi_Y x) and formal elements of the function algebra
// generated by them (finite sums of real multiples of finite products).

namespace specinf {

class PotentialTerm {
public:
    PotentialTerm(Subspace Y, RadialFn v) : Y_(std::move(Y)), v_(std::move(v)) {
        if (v_.dim() != Y_.codim())
            throw InvalidInput("PotentialTerm: function dimension must equal codim of Y");
    }

    const Subspace& subspace() const { return Y_; }
    const RadialFn& function() const { return v_; }
    bool bounded() const { return true; }
    double bound() const { return v_.sup_bound(); }

    std::string describe() const {
        std::string s = "term[Y=";
        s += detail::fmt_g(double(Y_.dim()));
        for (int c = 0; c < Y_.basis().cols(); ++c)
            s += ";" + detail::fmt_vec(Y_.basis().col(c));
        return s + "|" + v_.describe() + "]";
    }

private:
    Subspace Y_;
    RadialFn v_;
};

inline double eval_term(const PotentialTerm& t, const Vec& x) {
    if (x.size() != t.subspace().ambient_dim())
        throw InvalidInput("eval_term: dimension mismatch");
    return t.function().eval(project_quotient(t.subspace(), x));
}

inline double sup_norm_estimate(const PotentialTerm& t) { return t.function().sup_bound(); }

class AlgebraElement {
public:
    struct Monomial {
        double coeff = 0.0;
        std::vector<PotentialTerm> factors;
    };

    AlgebraElement() = default;
    explicit AlgebraElement(int ambient_dim) : d_(ambient_dim) {}

    static AlgebraElement constant(int ambient_dim, double c) {
        AlgebraElement u(ambient_dim);
        if (c != 0.0) u.monos_.push_back({c, {}});
        return u;
    }

    static AlgebraElement generator(PotentialTerm t) {
        AlgebraElement u(t.subspace().ambient_dim());
        u.monos_.push_back({1.0, {std::move(t)}});
        return u;
    }

    int ambient_dim() const { return d_; }
    const std::vector<Monomial>& monomials() const { return monos_; }
    bool is_zero() const { return monos_.empty(); }

    double eval(const Vec& x) const {
        double s = 0.0;
        for (const Monomial& m : monos_) {
            double p = m.coeff;
            for (const PotentialTerm& t : m.factors) p *= eval_term(t, x);
            s += p;
        }
        return s;
    }

    AlgebraElement operator+(const AlgebraElement& o) const {
        check_dim(o);
        AlgebraElement r(d_);
        r.monos_ = monos_;
        r.monos_.insert(r.monos_.end(), o.monos_.begin(), o.monos_.end());
        r.normalize();
        return r;
    }

    AlgebraElement operator*(const AlgebraElement& o) const {
        check_dim(o);
        AlgebraElement r(d_);
        for (const Monomial& a : monos_)
            for (const Monomial& b : o.monos_) {
                Monomial m;
                m.coeff = a.coeff * b.coeff;
                m.factors = a.factors;
                m.factors.insert(m.factors.end(), b.factors.begin(), b.factors.end());
                r.monos_.push_back(std::move(m));
            }
        r.normalize();
        return r;
    }

    AlgebraElement scaled(double c) const {
        AlgebraElement r(d_);
        if (c == 0.0) return r;
        r.monos_ = monos_;
        for (Monomial& m : r.monos_) m.coeff *= c;
        return r;
    }

    // fold constant factors into coefficients, drop zero monomials, merge
    // structurally identical products
    void normalize() {
        std::vector<Monomial> out;
        for (Monomial& m : monos_) {
            Monomial n;
            n.coeff = m.coeff;
            for (PotentialTerm& t : m.factors) {
                if (t.function().is_constant())
                    n.coeff *= t.function().constant_value();
                else
                    n.factors.push_back(std::move(t));
            }
            if (n.coeff == 0.0) continue;
            std::vector<std::string> keys;
            for (const PotentialTerm& t : n.factors) keys.push_back(t.describe());
            std::vector<int> order(keys.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = int(i);
            std::sort(order.begin(), order.end(),
                      [&](int a, int b) { return keys[a] < keys[b]; });
            std::vector<PotentialTerm> sorted;
            std::string sig;
            for (int i : order) {
                sorted.push_back(n.factors[i]);
                sig += keys[i] + "*";
            }
            n.factors = std::move(sorted);
            bool merged = false;
            for (Monomial& e : out) {
                std::string esig;
                for (const PotentialTerm& t : e.factors) esig += t.describe() + "*";
                if (esig == sig) {
                    e.coeff += n.coeff;
                    merged = true;
                    break;
                }
            }
            if (!merged) out.push_back(std::move(n));
        }
        std::erase_if(out, [](const Monomial& m) { return m.coeff == 0.0; });
        monos_ = std::move(out);
    }

    std::string describe() const {
        std::string s;
        for (const Monomial& m : monos_) {
            if (!s.empty()) s += " + ";
            s += detail::fmt_g(m.coeff);
            for (const PotentialTerm& t : m.factors) s += "*" + t.describe();
        }
        return s.empty() ? "0" : s;
    }

private:
    void check_dim(const AlgebraElement& o) const {
        if (o.d_ != d_) throw InvalidInput("AlgebraElement: ambient dimension mismatch");
    }

    int d_ = 0;
    std::vector<Monomial> monos_;
};

} // namespace specinf

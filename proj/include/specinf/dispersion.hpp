#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "specinf/errors.hpp"
#include "specinf/geometry.hpp"
#include "specinf/radial_function.hpp"

// Dispersion relations h: continuous, bounded below, proper. Three classes:
// quadratic |xi|^2, relativistic sum of sqrt(|p_block|^2 + m^2) over mass
// blocks, and even multivariate polynomial symbols with positive leading form.

namespace specinf {

class Dispersion {
    struct Impl {
        virtual ~Impl() = default;
        virtual int dim() const = 0;
        virtual double eval(const Vec& p) const = 0;
        virtual std::string describe() const = 0;
        virtual bool quadratic() const { return false; }
    };
    using ImplPtr = std::shared_ptr<const Impl>;

public:
    int dim() const { return impl_->dim(); }
    double operator()(const Vec& p) const { return impl_->eval(p); }
    std::string describe() const { return impl_->describe(); }
    bool is_quadratic() const { return impl_->quadratic(); }

    static Dispersion quadratic(int dim) {
        struct Q : Impl {
            int d;
            int dim() const override { return d; }
            double eval(const Vec& p) const override { return p.squaredNorm(); }
            std::string describe() const override { return "quadratic"; }
            bool quadratic() const override { return true; }
        };
        auto p = std::make_shared<Q>();
        p->d = dim;
        return Dispersion(p);
    }

    // block k covers block_sizes[k] consecutive coordinates with mass masses[k]
    static Dispersion relativistic(std::vector<int> block_sizes, std::vector<double> masses) {
        if (block_sizes.size() != masses.size() || block_sizes.empty())
            throw InvalidInput("Relativistic: need matching non-empty blocks and masses");
        int d = 0;
        for (int b : block_sizes) {
            if (b < 1) throw InvalidInput("Relativistic: block sizes must be >= 1");
            d += b;
        }
        for (double m : masses)
            if (m < 0) throw InvalidInput("Relativistic: masses must be >= 0");
        struct R : Impl {
            std::vector<int> blocks;
            std::vector<double> masses;
            int d;
            int dim() const override { return d; }
            double eval(const Vec& p) const override {
                double s = 0;
                int off = 0;
                for (std::size_t k = 0; k < blocks.size(); ++k) {
                    double q2 = p.segment(off, blocks[k]).squaredNorm();
                    s += std::sqrt(q2 + masses[k] * masses[k]);
                    off += blocks[k];
                }
                return s;
            }
            std::string describe() const override {
                std::string s = "relativistic(";
                for (std::size_t k = 0; k < blocks.size(); ++k) {
                    if (k) s += ";";
                    s += std::to_string(blocks[k]) + ":" + detail::fmt_g(masses[k]);
                }
                return s + ")";
            }
        };
        auto p = std::make_shared<R>();
        p->blocks = std::move(block_sizes);
        p->masses = std::move(masses);
        p->d = d;
        return Dispersion(p);
    }

    struct PolyTerm {
        double coeff;
        std::vector<int> exponents;   // one per axis
    };

    static Dispersion polynomial(int dim, std::vector<PolyTerm> terms) {
        if (terms.empty()) throw InvalidInput("PolynomialSymbol: empty");
        for (const PolyTerm& t : terms) {
            if (int(t.exponents.size()) != dim)
                throw InvalidInput("PolynomialSymbol: exponent arity mismatch");
            int deg = 0;
            for (int e : t.exponents) {
                if (e < 0) throw InvalidInput("PolynomialSymbol: negative exponent");
                deg += e;
            }
            if (deg % 2 != 0) throw InvalidInput("PolynomialSymbol: only even total degrees");
        }
        struct P : Impl {
            int d;
            std::vector<PolyTerm> terms;
            int dim() const override { return d; }
            double eval(const Vec& p) const override {
                double s = 0;
                for (const PolyTerm& t : terms) {
                    double m = t.coeff;
                    for (int ax = 0; ax < d; ++ax)
                        for (int e = 0; e < t.exponents[ax]; ++e) m *= p[ax];
                    s += m;
                }
                return s;
            }
            std::string describe() const override {
                std::string s = "polynomial(";
                for (std::size_t i = 0; i < terms.size(); ++i) {
                    if (i) s += ";";
                    s += detail::fmt_g(terms[i].coeff);
                    for (int e : terms[i].exponents) s += ":" + std::to_string(e);
                }
                return s + ")";
            }
        };
        auto q = std::make_shared<P>();
        q->d = dim;
        q->terms = std::move(terms);
        return Dispersion(q);
    }

private:
    explicit Dispersion(ImplPtr p) : impl_(std::move(p)) {}
    ImplPtr impl_;
};

struct DispersionValidation {
    double c;        // smallest feasible constant on the samples
    double s;        // growth exponent from log-log fit
    bool pass;
};

// samples |grad h| <= c(1+h) and c^{-1}|p|^s <= sqrt(1+h) <= c|p|^s on rays
// with |p| in [1, 100]; s fitted by least squares in log-log coordinates
inline DispersionValidation validate_dispersion(const Dispersion& h,
                                                const std::vector<double>& sample_radii) {
    const int d = h.dim();
    std::vector<Vec> dirs;
    dirs.push_back(Vec::Ones(d).normalized());
    for (int i = 0; i < d; ++i) dirs.push_back(Vec::Unit(d, i));
    if (d >= 2) {
        Vec v = Vec::Ones(d);
        v[0] = -1;
        dirs.push_back(v.normalized());
    }

    const double fd_step = 1e-5;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int npts = 0;
    double c_needed = 1.0;
    std::vector<std::pair<double, double>> samples;   // (|p|, sqrt(1+h))
    for (const Vec& u : dirs) {
        for (double r : sample_radii) {
            if (r < 1.0) continue;
            Vec p = r * u;
            double hv = h(p);
            if (!std::isfinite(hv)) return {0, 0, false};
            Vec g(d);
            for (int ax = 0; ax < d; ++ax) {
                Vec pp = p, pm = p;
                pp[ax] += fd_step;
                pm[ax] -= fd_step;
                g[ax] = (h(pp) - h(pm)) / (2 * fd_step);
            }
            c_needed = std::max(c_needed, g.norm() / (1.0 + hv));
            double y = 0.5 * std::log1p(hv);
            double x = std::log(r);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
            ++npts;
            samples.push_back({r, std::sqrt(1.0 + hv)});
        }
    }
    if (npts < 2) throw InvalidInput("validate_dispersion: need at least two radii >= 1");
    double denom = npts * sxx - sx * sx;
    double s_fit = (denom != 0) ? (npts * sxy - sx * sy) / denom : 0.0;
    bool proper = s_fit > 1e-3;   // h must grow; constants and decaying h fail here
    for (auto [r, v] : samples) {
        double ps = std::pow(r, s_fit);
        c_needed = std::max(c_needed, std::max(v / ps, ps / v));
    }
    return {c_needed, s_fit, proper};
}

} // namespace specinf

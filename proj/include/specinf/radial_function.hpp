#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "specinf/errors.hpp"
#include "specinf/geometry.hpp"

// Closed-form function classes on a realized quotient Z = Y-perp, every one
// with uniform radial limits at infinity. The class set is closed under the
// limit operation, which is what keeps localized Hamiltonians representable.

namespace specinf {

// fixed smooth switch, s(-inf)=0, s(+inf)=1
inline double smooth_switch(double t) { return 0.5 * (1.0 + std::tanh(t)); }

// fixed cutoff: exactly 0 for r <= R, exactly 1 for r >= 2R, clamped switch between
inline double radial_cutoff(double r, double R) {
    if (r <= R) return 0.0;
    if (r >= 2.0 * R) return 1.0;
    return std::clamp(smooth_switch(3.0 * (2.0 * r - 3.0 * R) / R), 0.0, 1.0);
}

namespace detail {
inline std::string fmt_g(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}
inline std::string fmt_vec(const Vec& v) {
    std::string s;
    for (int i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += fmt_g(v[i]);
    }
    return s;
}
} // namespace detail

// angular part of an AngularProfile: closed form on the unit sphere of Z,
// or a sample table with piecewise-linear interpolation (supported for
// one- and two-dimensional Z; geodesic triangulations for dim >= 3 are out
// of scope and rejected at construction)
class SphereFunction {
public:
    static SphereFunction linear_form(Vec w) {
        SphereFunction f;
        f.dim_ = int(w.size());
        f.w_ = std::move(w);
        f.is_table_ = false;
        return f;
    }

    // rows of (direction, value); directions normalized on load
    static SphereFunction sample_table(int dim, std::vector<std::pair<Vec, double>> rows) {
        SphereFunction f;
        f.dim_ = dim;
        f.is_table_ = true;
        if (dim == 1) {
            bool hp = false, hm = false;
            for (auto& [d, v] : rows) {
                if (d.size() != 1 || d[0] == 0.0) throw InvalidInput("sample table: bad 1d direction");
                (d[0] > 0 ? hp : hm) = true;
                (d[0] > 0 ? f.vplus_ : f.vminus_) = v;
            }
            if (!hp || !hm) throw InvalidInput("sample table: 1d table needs both directions");
        } else if (dim == 2) {
            if (rows.size() < 2) throw InvalidInput("sample table: need at least 2 rows on the circle");
            for (auto& [d, v] : rows) {
                if (d.size() != 2 || d.norm() == 0.0) throw InvalidInput("sample table: bad 2d direction");
                f.angles_.push_back({std::atan2(d[1], d[0]), v});
            }
            std::sort(f.angles_.begin(), f.angles_.end());
        } else {
            throw InvalidInput("sample table: interpolation beyond the circle is not supported");
        }
        return f;
    }

    int dim() const { return dim_; }

    double eval(const Vec& unit) const {
        if (!is_table_) return w_.dot(unit);
        if (dim_ == 1) return unit[0] > 0 ? vplus_ : vminus_;
        double th = std::atan2(unit[1], unit[0]);
        const auto& a = angles_;
        auto it = std::lower_bound(a.begin(), a.end(), std::make_pair(th, -1e300));
        // wrap: segment between the last and first samples crosses the cut
        double t0, t1, v0, v1;
        if (it == a.begin() || it == a.end()) {
            t0 = a.back().first;
            t1 = a.front().first + 2.0 * M_PI;
            v0 = a.back().second;
            v1 = a.front().second;
            if (it == a.begin()) th += 2.0 * M_PI;
        } else {
            t0 = (it - 1)->first;
            t1 = it->first;
            v0 = (it - 1)->second;
            v1 = it->second;
        }
        double u = (t1 > t0) ? (th - t0) / (t1 - t0) : 0.0;
        return v0 + (v1 - v0) * u;
    }

    double sup_bound() const {
        if (!is_table_) return w_.norm();
        if (dim_ == 1) return std::max(std::abs(vplus_), std::abs(vminus_));
        double m = 0;
        for (const auto& [t, v] : angles_) m = std::max(m, std::abs(v));
        return m;
    }

    std::string describe() const {
        if (!is_table_) return "linear_form(" + detail::fmt_vec(w_) + ")";
        std::string s = "table(";
        if (dim_ == 1) {
            s += detail::fmt_g(vminus_) + ";" + detail::fmt_g(vplus_);
        } else {
            for (std::size_t i = 0; i < angles_.size(); ++i) {
                if (i) s += ";";
                s += detail::fmt_g(angles_[i].first) + ":" + detail::fmt_g(angles_[i].second);
            }
        }
        return s + ")";
    }

private:
    int dim_ = 0;
    bool is_table_ = false;
    Vec w_;
    double vplus_ = 0, vminus_ = 0;
    std::vector<std::pair<double, double>> angles_;
};

class RadialFn {
    struct Impl;
    using ImplPtr = std::shared_ptr<const Impl>;

    struct Impl {
        virtual ~Impl() = default;
        virtual int dim() const = 0;
        virtual double eval(const Vec& z) const = 0;
        virtual double limit(const Vec& unit) const = 0;   // exact radial limit along unit
        virtual double sup_bound() const = 0;
        virtual std::string describe() const = 0;
    };

public:
    int dim() const { return impl_->dim(); }

    double eval(const Vec& z) const {
        if (int(z.size()) != impl_->dim()) throw InvalidInput("RadialFn::eval: dimension mismatch");
        return impl_->eval(z);
    }

    // closed-form limit lim_{r->inf} v(r*unit); unit must be a unit vector of dim() >= 1
    double limit(const Vec& unit) const {
        if (impl_->dim() == 0) throw DomainIsAPoint("radial_limit: domain is a point");
        if (int(unit.size()) != impl_->dim()) throw InvalidInput("radial_limit: dimension mismatch");
        return impl_->limit(unit);
    }

    double sup_bound() const { return impl_->sup_bound(); }
    std::string describe() const { return impl_->describe(); }
    bool same_form(const RadialFn& o) const { return describe() == o.describe(); }

    bool is_constant() const { return constant_; }
    double constant_value() const { return const_val_; }

    static RadialFn constant(int dim, double c) {
        struct C : Impl {
            int d;
            double c;
            int dim() const override { return d; }
            double eval(const Vec&) const override { return c; }
            double limit(const Vec&) const override { return c; }
            double sup_bound() const override { return std::abs(c); }
            std::string describe() const override {
                return "constant(" + detail::fmt_g(c) + ")";
            }
        };
        auto p = std::make_shared<C>();
        p->d = dim;
        p->c = c;
        RadialFn f(p);
        f.constant_ = true;
        f.const_val_ = c;
        return f;
    }

    static RadialFn gaussian_well(int dim, double depth, double width) {
        if (width <= 0) throw InvalidInput("GaussianWell: width must be positive");
        if (dim < 1) throw InvalidInput("GaussianWell: needs dim >= 1");
        struct G : Impl {
            int d;
            double depth, width;
            int dim() const override { return d; }
            double eval(const Vec& z) const override {
                return depth * std::exp(-z.squaredNorm() / (width * width));
            }
            double limit(const Vec&) const override { return 0.0; }
            double sup_bound() const override { return std::abs(depth); }
            std::string describe() const override {
                return "gaussian_well(" + detail::fmt_g(depth) + "," + detail::fmt_g(width) + ")";
            }
        };
        auto p = std::make_shared<G>();
        p->d = dim;
        p->depth = depth;
        p->width = width;
        return RadialFn(p);
    }

    static RadialFn compact_bump(Vec center, double radius, double amplitude) {
        if (radius <= 0) throw InvalidInput("CompactBump: radius must be positive");
        if (center.size() < 1) throw InvalidInput("CompactBump: needs dim >= 1");
        struct B : Impl {
            Vec center;
            double radius, amp;
            int dim() const override { return int(center.size()); }
            double eval(const Vec& z) const override {
                double u = (z - center).norm() / radius;
                if (u >= 1.0) return 0.0;
                return amp * std::exp(1.0 - 1.0 / (1.0 - u * u));
            }
            double limit(const Vec&) const override { return 0.0; }
            double sup_bound() const override { return std::abs(amp); }
            std::string describe() const override {
                return "compact_bump(" + detail::fmt_vec(center) + ";" + detail::fmt_g(radius) +
                       "," + detail::fmt_g(amp) + ")";
            }
        };
        auto p = std::make_shared<B>();
        p->center = std::move(center);
        p->radius = radius;
        p->amp = amplitude;
        return RadialFn(p);
    }

    static RadialFn smooth_step(Vec direction, double low, double high, double scale) {
        if (scale <= 0) throw InvalidInput("SmoothStep: scale must be positive");
        double n = direction.norm();
        if (n == 0) throw InvalidInput("SmoothStep: zero direction");
        direction /= n;
        struct S : Impl {
            Vec dir;
            double low, high, scale;
            int dim() const override { return int(dir.size()); }
            double eval(const Vec& z) const override {
                return low + (high - low) * smooth_switch(z.dot(dir) / scale);
            }
            double limit(const Vec& unit) const override {
                double t = unit.dot(dir);
                if (t > 0) return high;
                if (t < 0) return low;
                return low + (high - low) * smooth_switch(0.0);
            }
            double sup_bound() const override { return std::max(std::abs(low), std::abs(high)); }
            std::string describe() const override {
                return "smooth_step(" + detail::fmt_vec(dir) + ";" + detail::fmt_g(low) + "," +
                       detail::fmt_g(high) + "," + detail::fmt_g(scale) + ")";
            }
        };
        auto p = std::make_shared<S>();
        p->dir = std::move(direction);
        p->low = low;
        p->high = high;
        p->scale = scale;
        return RadialFn(p);
    }

    static RadialFn angular_profile(SphereFunction g, double cutoff_radius) {
        if (cutoff_radius <= 0) throw InvalidInput("AngularProfile: cutoff radius must be positive");
        if (g.dim() < 1) throw InvalidInput("AngularProfile: needs dim >= 1");
        struct A : Impl {
            SphereFunction g;
            double R;
            int dim() const override { return g.dim(); }
            double eval(const Vec& z) const override {
                double r = z.norm();
                double chi = radial_cutoff(r, R);
                if (chi == 0.0) return 0.0;
                return g.eval(z / r) * chi;
            }
            double limit(const Vec& unit) const override { return g.eval(unit); }
            double sup_bound() const override { return g.sup_bound(); }
            std::string describe() const override {
                return "angular_profile(" + g.describe() + ";" + detail::fmt_g(R) + ")";
            }
        };
        auto p = std::make_shared<A>();
        p->g = std::move(g);
        p->R = cutoff_radius;
        return RadialFn(p);
    }

    static RadialFn sum(std::vector<RadialFn> parts) {
        if (parts.empty()) throw InvalidInput("Sum: needs at least one part");
        int d = parts[0].dim();
        for (const RadialFn& f : parts)
            if (f.dim() != d) throw InvalidInput("Sum: mixed dimensions");
        struct Sm : Impl {
            std::vector<RadialFn> parts;
            int dim() const override { return parts[0].dim(); }
            double eval(const Vec& z) const override {
                double s = 0;
                for (const RadialFn& f : parts) s += f.eval(z);
                return s;
            }
            double limit(const Vec& unit) const override {
                double s = 0;
                for (const RadialFn& f : parts) s += f.limit(unit);
                return s;
            }
            double sup_bound() const override {
                double s = 0;
                for (const RadialFn& f : parts) s += f.sup_bound();
                return s;
            }
            std::string describe() const override {
                std::string s = "sum(";
                for (std::size_t i = 0; i < parts.size(); ++i) {
                    if (i) s += "+";
                    s += parts[i].describe();
                }
                return s + ")";
            }
        };
        auto p = std::make_shared<Sm>();
        p->parts = std::move(parts);
        return RadialFn(p);
    }

    static RadialFn scale(double factor, RadialFn inner) {
        struct Sc : Impl {
            double factor;
            RadialFn inner;
            Sc(double f, RadialFn i) : factor(f), inner(std::move(i)) {}
            int dim() const override { return inner.dim(); }
            double eval(const Vec& z) const override { return factor * inner.eval(z); }
            double limit(const Vec& unit) const override { return factor * inner.limit(unit); }
            double sup_bound() const override { return std::abs(factor) * inner.sup_bound(); }
            std::string describe() const override {
                return "scale(" + detail::fmt_g(factor) + "," + inner.describe() + ")";
            }
        };
        return RadialFn(std::make_shared<Sc>(factor, std::move(inner)));
    }

private:
    explicit RadialFn(ImplPtr p) : impl_(std::move(p)) {}
    ImplPtr impl_;
    bool constant_ = false;
    double const_val_ = 0.0;
};

// independent ray-limit oracle: v at increasing radii along unit, error bar
// from the spread of the last three samples
struct RayLimit {
    double estimate;
    double error_bar;
};

inline RayLimit numeric_radial_limit(const RadialFn& v, const Vec& unit, const Vec& x_offset,
                                     const std::vector<double>& radii) {
    if (radii.size() < 3) throw InvalidInput("numeric_radial_limit: need at least 3 radii");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (radii[i] <= radii[i - 1]) throw InvalidInput("numeric_radial_limit: radii must increase");
    Vec u = unit.normalized();
    std::vector<double> vals;
    for (double r : radii) vals.push_back(v.eval(r * u + x_offset));
    std::size_t n = vals.size();
    double eb = std::max(std::abs(vals[n - 1] - vals[n - 2]), std::abs(vals[n - 2] - vals[n - 3]));
    return {vals[n - 1], eb};
}

} // namespace specinf

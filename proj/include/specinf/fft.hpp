#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <deque>
#include <vector>

#include "specinf/errors.hpp"

// Iterative radix-2 Cooley-Tukey, unitary normalization (1/sqrt(n) per axis
// and per transform direction). Sizes are powers of two.

namespace specinf::fft {

using cplx = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

namespace detail {

struct Plan {
    std::size_t n = 0;
    std::vector<std::size_t> rev;     // bit-reversal permutation
    std::vector<cplx> w_fwd;          // twiddles e^{-2pi i j/n}, j < n/2
    std::vector<cplx> w_inv;

    explicit Plan(std::size_t size) : n(size), rev(size) {
        std::size_t logn = 0;
        while ((std::size_t(1) << logn) < n) ++logn;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (std::size_t b = 0; b < logn; ++b)
                if (i & (std::size_t(1) << b)) r |= std::size_t(1) << (logn - 1 - b);
            rev[i] = r;
        }
        w_fwd.resize(n / 2);
        w_inv.resize(n / 2);
        const double two_pi = 2.0 * M_PI;
        for (std::size_t j = 0; j < n / 2; ++j) {
            double ang = two_pi * double(j) / double(n);
            w_fwd[j] = cplx(std::cos(ang), -std::sin(ang));
            w_inv[j] = cplx(std::cos(ang), std::sin(ang));
        }
    }
};

// deque keeps references to cached plans stable as the cache grows
inline const Plan& plan_for(std::size_t n) {
    static thread_local std::deque<Plan> cache;
    for (const Plan& p : cache)
        if (p.n == n) return p;
    cache.emplace_back(n);
    return cache.back();
}

// in-place transform of a contiguous length-n buffer, no normalization
inline void core(cplx* a, std::size_t n, bool forward) {
    const Plan& p = plan_for(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = p.rev[i];
        if (i < r) std::swap(a[i], a[r]);
    }
    const std::vector<cplx>& w = forward ? p.w_fwd : p.w_inv;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::size_t half = len >> 1;
        std::size_t step = n / len;
        for (std::size_t blk = 0; blk < n; blk += len) {
            for (std::size_t j = 0; j < half; ++j) {
                cplx u = a[blk + j];
                cplx v = a[blk + j + half] * w[j * step];
                a[blk + j] = u + v;
                a[blk + j + half] = u - v;
            }
        }
    }
}

} // namespace detail

// 1D unitary transform, in place
inline void transform(cplx* a, std::size_t n, bool forward) {
    if (!is_pow2(n)) throw InvalidInput("fft: size must be a power of two");
    detail::core(a, n, forward);
    double s = 1.0 / std::sqrt(double(n));
    for (std::size_t i = 0; i < n; ++i) a[i] *= s;
}

// d-dimensional unitary transform on a flat row-major array of extents
// (n, n, ..., n); transforms every axis in place
inline void transform_nd(cplx* a, std::size_t n, int dim, bool forward) {
    if (!is_pow2(n)) throw InvalidInput("fft: size must be a power of two");
    std::size_t total = 1;
    for (int ax = 0; ax < dim; ++ax) total *= n;
    std::vector<cplx> scratch(n);
    // axis ax has stride n^(dim-1-ax) in row-major order
    std::size_t stride = total;
    for (int ax = 0; ax < dim; ++ax) {
        stride /= n;
        std::size_t block = stride * n;
        for (std::size_t base = 0; base < total; base += block) {
            for (std::size_t off = 0; off < stride; ++off) {
                cplx* start = a + base + off;
                if (stride == 1) {
                    detail::core(start, n, forward);
                } else {
                    for (std::size_t i = 0; i < n; ++i) scratch[i] = start[i * stride];
                    detail::core(scratch.data(), n, forward);
                    for (std::size_t i = 0; i < n; ++i) start[i * stride] = scratch[i];
                }
            }
        }
    }
    double s = 1.0 / std::sqrt(double(total));
    for (std::size_t i = 0; i < total; ++i) a[i] *= s;
}

} // namespace specinf::fft

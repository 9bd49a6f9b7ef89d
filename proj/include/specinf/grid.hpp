#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "specinf/errors.hpp"
#include "specinf/fft.hpp"
#include "specinf/geometry.hpp"

// Periodic box [-L, L)^d with n points per axis (n a power of two).
// Position lattice x_j = -L + j*dx, dx = 2L/n; momentum lattice
// k_m = (pi/L)*m for integer m in [-n/2, n/2).

namespace specinf {

struct Grid {
    int d;
    double L;
    int n;

    Grid(int dim, double half_length, int points)
        : d(dim), L(half_length), n(points) {
        if (d < 1) throw InvalidInput("Grid: dimension must be >= 1");
        if (L <= 0) throw InvalidInput("Grid: L must be positive");
        if (n < 8 || !fft::is_pow2(std::size_t(n)))
            throw InvalidInput("Grid: n must be a power of two, n >= 8");
    }

    double dx() const { return 2.0 * L / n; }

    std::size_t total() const {
        std::size_t t = 1;
        for (int i = 0; i < d; ++i) t *= std::size_t(n);
        return t;
    }

    double axis_position(int j) const { return -L + dx() * j; }

    double axis_momentum(int j) const {
        int m = (j < n / 2) ? j : j - n;
        return (M_PI / L) * m;
    }

    // row-major flat index decoding
    Vec position_of(std::size_t flat) const {
        Vec x(d);
        for (int ax = d - 1; ax >= 0; --ax) {
            x[ax] = axis_position(int(flat % n));
            flat /= n;
        }
        return x;
    }

    Vec momentum_of(std::size_t flat) const {
        Vec k(d);
        for (int ax = d - 1; ax >= 0; --ax) {
            k[ax] = axis_momentum(int(flat % n));
            flat /= n;
        }
        return k;
    }

    bool operator==(const Grid& o) const { return d == o.d && L == o.L && n == o.n; }
};

} // namespace specinf

#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <vector>

#include "specinf/fft.hpp"
#include "specinf/rng.hpp"

using namespace specinf;
using Cpx = std::complex<double>;

namespace {

std::vector<Cpx> random_signal(std::size_t n, std::uint64_t seed) {
    DetRng rng(seed);
    std::vector<Cpx> v(n);
    for (auto& z : v) z = {rng.normal(), rng.normal()};
    return v;
}

double max_abs_diff(const std::vector<Cpx>& a, const std::vector<Cpx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

TEST_CASE("forward then inverse transform is the identity") {
    for (std::size_t n : {8u, 64u, 256u}) {
        auto v = random_signal(n, 11 + n);
        auto w = v;
        fft::transform(w.data(), n, true);
        fft::transform(w.data(), n, false);
        REQUIRE(max_abs_diff(v, w) < 1e-12);
    }
}

TEST_CASE("transform preserves the two norm") {
    auto v = random_signal(128, 5);
    double before = 0.0;
    for (auto& z : v) before += std::norm(z);
    fft::transform(v.data(), 128, true);
    double after = 0.0;
    for (auto& z : v) after += std::norm(z);
    REQUIRE(after == Catch::Approx(before).epsilon(1e-13));
}

TEST_CASE("plane wave concentrates in a single frequency bin") {
    std::size_t n = 64;
    std::vector<Cpx> v(n);
    int m = 5;
    for (std::size_t j = 0; j < n; ++j) {
        double ph = 2.0 * M_PI * double(m) * double(j) / double(n);
        v[j] = {std::cos(ph), std::sin(ph)};
    }
    fft::transform(v.data(), n, true);
    for (std::size_t f = 0; f < n; ++f) {
        if (f == std::size_t(m))
            REQUIRE(std::abs(v[f]) == Catch::Approx(std::sqrt(double(n))).epsilon(1e-12));
        else
            REQUIRE(std::abs(v[f]) < 1e-12);
    }
}

TEST_CASE("multi axis transform matches axis by axis application") {
    std::size_t n = 16;
    auto v = random_signal(n * n, 17);
    auto w = v;
    fft::transform_nd(w.data(), n, 2, true);

    // rows first (contiguous), then columns via gather
    auto u = v;
    for (std::size_t r = 0; r < n; ++r) fft::transform(u.data() + r * n, n, true);
    std::vector<Cpx> col(n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) col[r] = u[r * n + c];
        fft::transform(col.data(), n, true);
        for (std::size_t r = 0; r < n; ++r) u[r * n + c] = col[r];
    }
    REQUIRE(max_abs_diff(u, w) < 1e-12);
}

TEST_CASE("inverse of multi axis transform is the identity") {
    auto v = random_signal(32 * 32, 23);
    auto w = v;
    fft::transform_nd(w.data(), 32, 2, true);
    fft::transform_nd(w.data(), 32, 2, false);
    REQUIRE(max_abs_diff(v, w) < 1e-12);
}

TEST_CASE("non power of two sizes are rejected") {
    std::vector<Cpx> v(12);
    REQUIRE_THROWS_AS(fft::transform(v.data(), 12, true), InvalidInput);
}

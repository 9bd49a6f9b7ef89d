#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "specinf/dispersion.hpp"
#include "specinf/hamiltonian.hpp"
#include "specinf/potential.hpp"
#include "specinf/radial_function.hpp"
#include "specinf/rng.hpp"

using namespace specinf;

TEST_CASE("gaussian well value, limit and bound") {
    RadialFn v = RadialFn::gaussian_well(2, -2.0, 1.5);
    Vec z = Vec::Zero(2);
    REQUIRE(v.eval(z) == Catch::Approx(-2.0));
    z << 3, 4;
    REQUIRE(v.eval(z) == Catch::Approx(-2.0 * std::exp(-25.0 / (1.5 * 1.5))));
    Vec u(2);
    u << 1, 0;
    REQUIRE(v.limit(u) == 0.0);
    REQUIRE(v.sup_bound() == Catch::Approx(2.0));
}

TEST_CASE("smooth step approaches its two limits") {
    Vec dir(1);
    dir << 1;
    RadialFn v = RadialFn::smooth_step(dir, -0.5, 0.3, 1.0);
    Vec plus(1), minus(1);
    plus << 1;
    minus << -1;
    REQUIRE(v.limit(plus) == Catch::Approx(0.3));
    REQUIRE(v.limit(minus) == Catch::Approx(-0.5));
    Vec far(1);
    far << 40.0;
    REQUIRE(v.eval(far) == Catch::Approx(0.3).margin(1e-12));
    far << -40.0;
    REQUIRE(v.eval(far) == Catch::Approx(-0.5).margin(1e-12));
}

TEST_CASE("angular profile vanishes inside the cutoff and limits to the profile") {
    Vec w(2);
    w << 0.5, 0.0;
    RadialFn v = RadialFn::angular_profile(SphereFunction::linear_form(w), 2.0);
    Vec inside(2);
    inside << 1.0, 0.5;
    REQUIRE(v.eval(inside) == 0.0);
    Vec u(2);
    u << std::cos(1.0), std::sin(1.0);
    REQUIRE(v.limit(u) == Catch::Approx(0.5 * std::cos(1.0)));
    Vec far = 100.0 * u;
    REQUIRE(v.eval(far) == Catch::Approx(0.5 * std::cos(1.0)).margin(1e-12));
}

TEST_CASE("compact bump is supported in its ball") {
    Vec c(2);
    c << 1, 1;
    RadialFn v = RadialFn::compact_bump(c, 1.0, 3.0);
    REQUIRE(v.eval(c) == Catch::Approx(3.0));
    Vec out(2);
    out << 5, 5;
    REQUIRE(v.eval(out) == 0.0);
    Vec u(2);
    u << 1, 0;
    REQUIRE(v.limit(u) == 0.0);
}

TEST_CASE("sums and scalar multiples act pointwise") {
    RadialFn a = RadialFn::constant(1, 2.0);
    RadialFn b = RadialFn::gaussian_well(1, -1.0, 1.0);
    RadialFn s = RadialFn::sum({a, b});
    Vec z(1);
    z << 0.7;
    REQUIRE(s.eval(z) == Catch::Approx(a.eval(z) + b.eval(z)));
    RadialFn t = RadialFn::scale(-3.0, b);
    REQUIRE(t.eval(z) == Catch::Approx(-3.0 * b.eval(z)));
    Vec u(1);
    u << 1;
    REQUIRE(s.limit(u) == Catch::Approx(2.0));
}

TEST_CASE("numeric ray limits agree with exact limits") {
    Vec dir(2);
    dir << 1, 2;
    RadialFn v = RadialFn::sum({RadialFn::smooth_step(dir, -1.0, 0.5, 2.0),
                                RadialFn::gaussian_well(2, -3.0, 1.0)});
    std::vector<double> radii = {200.0, 400.0, 800.0};
    DetRng rng(3);
    int kept = 0;
    while (kept < 10) {
        Vec u(2);
        u << rng.normal(), rng.normal();
        u.normalize();
        if (std::abs(u.dot(dir.normalized())) < 0.1) continue;   // step transition region
        ++kept;
        Vec off(2);
        off << rng.normal(), rng.normal();
        RayLimit rl = numeric_radial_limit(v, u, off, radii);
        REQUIRE(rl.estimate == Catch::Approx(v.limit(u)).margin(1e-8));
    }
}

TEST_CASE("numeric ray limit needs at least three increasing radii") {
    RadialFn v = RadialFn::constant(1, 1.0);
    Vec u(1);
    u << 1;
    REQUIRE_THROWS_AS(numeric_radial_limit(v, u, Vec::Zero(1), {1.0, 2.0}), InvalidInput);
}

TEST_CASE("zero dimensional radial limits are undefined") {
    RadialFn v = RadialFn::constant(0, 1.0);
    REQUIRE_THROWS_AS(v.limit(Vec::Zero(0)), DomainIsAPoint);
}

TEST_CASE("sphere sample table interpolates and wraps in two dimensions") {
    // four compass samples of cos(theta)
    std::vector<std::pair<Vec, double>> rows;
    auto at = [](double th) {
        Vec u(2);
        u << std::cos(th), std::sin(th);
        return u;
    };
    for (double th : {0.0, M_PI / 2, M_PI, 3 * M_PI / 2}) rows.push_back({at(th), std::cos(th)});
    SphereFunction g = SphereFunction::sample_table(2, rows);
    REQUIRE(g.eval(at(0.0)) == Catch::Approx(1.0));
    REQUIRE(g.eval(at(M_PI)) == Catch::Approx(-1.0));
    // midpoint between the last and first sample interpolates across the wrap
    REQUIRE(g.eval(at(7 * M_PI / 4)) == Catch::Approx(0.5));
}

TEST_CASE("one dimensional sphere tables need both signs") {
    Vec plus(1), minus(1);
    plus << 1;
    minus << -1;
    REQUIRE_THROWS_AS(SphereFunction::sample_table(1, {{plus, 2.0}}), InvalidInput);
    SphereFunction g = SphereFunction::sample_table(1, {{plus, 2.0}, {minus, -1.0}});
    REQUIRE(g.eval(plus) == Catch::Approx(2.0));
    REQUIRE(g.eval(minus) == Catch::Approx(-1.0));
}

TEST_CASE("potential terms require the function dimension to match the quotient") {
    Vec a(2);
    a << 1, 0;
    Subspace Y = orthonormalize({a}, 2);
    REQUIRE_NOTHROW(PotentialTerm(Y, RadialFn::gaussian_well(1, -1.0, 1.0)));
    REQUIRE_THROWS_AS(PotentialTerm(Y, RadialFn::gaussian_well(2, -1.0, 1.0)), InvalidInput);
}

TEST_CASE("potential terms evaluate through quotient coordinates") {
    Vec a(2);
    a << 1, 0;
    Subspace Y = orthonormalize({a}, 2);
    PotentialTerm t(Y, RadialFn::gaussian_well(1, -2.0, 1.0));
    Vec x(2);
    x << 100.0, 0.5;   // position along Y must not matter
    Vec x2(2);
    x2 << -3.0, 0.5;
    REQUIRE(eval_term(t, x) == Catch::Approx(eval_term(t, x2)));
    REQUIRE(eval_term(t, x) == Catch::Approx(-2.0 * std::exp(-0.25)));
}

TEST_CASE("algebra elements evaluate as sums of products") {
    Subspace Y0 = Subspace::zero(1);
    PotentialTerm g1(Y0, RadialFn::gaussian_well(1, -1.0, 1.0));
    PotentialTerm g2(Y0, RadialFn::smooth_step(Vec::Ones(1), 0.0, 1.0, 1.0));
    AlgebraElement u = AlgebraElement::constant(1, 2.0) +
                       AlgebraElement::generator(g1) * AlgebraElement::generator(g2);
    Vec x(1);
    x << 0.3;
    REQUIRE(u.eval(x) == Catch::Approx(2.0 + eval_term(g1, x) * eval_term(g2, x)));
}

TEST_CASE("algebra normalization folds constants and merges duplicates") {
    Subspace Y0 = Subspace::zero(1);
    PotentialTerm g(Y0, RadialFn::gaussian_well(1, -1.0, 1.0));
    AlgebraElement a = AlgebraElement::generator(g).scaled(2.0);
    AlgebraElement b = AlgebraElement::generator(g).scaled(3.0);
    AlgebraElement s = a + b;
    REQUIRE(s.monomials().size() == 1);
    REQUIRE(s.monomials()[0].coeff == Catch::Approx(5.0));
    // multiplying by a constant element folds into the coefficient
    AlgebraElement c = AlgebraElement::constant(1, 4.0) * AlgebraElement::generator(g);
    REQUIRE(c.monomials().size() == 1);
    REQUIRE(c.monomials()[0].coeff == Catch::Approx(4.0));
    REQUIRE(c.monomials()[0].factors.size() == 1);
    // zero scaling collapses to the zero element
    REQUIRE(AlgebraElement::generator(g).scaled(0.0).is_zero());
}

TEST_CASE("dispersion families evaluate their symbols") {
    Dispersion q = Dispersion::quadratic(2);
    Vec k(2);
    k << 3, 4;
    REQUIRE(q(k) == Catch::Approx(25.0));
    REQUIRE(q.is_quadratic());

    Dispersion r = Dispersion::relativistic({2}, {1.0});
    REQUIRE_FALSE(r.is_quadratic());
    REQUIRE(r(k) == Catch::Approx(std::sqrt(25.0 + 1.0)));

    Dispersion p = Dispersion::polynomial(2, {{1.0, {2, 0}}, {0.5, {0, 4}}});
    REQUIRE(p(k) == Catch::Approx(9.0 + 0.5 * 256.0));
}

TEST_CASE("dispersion growth validation accepts the quadratic symbol") {
    DispersionValidation v = validate_dispersion(Dispersion::quadratic(1), {10.0, 20.0, 40.0, 80.0});
    REQUIRE(v.pass);
    // sqrt(1 + r^2) grows like r, so the fitted exponent is one
    REQUIRE(v.s == Catch::Approx(1.0).margin(0.01));
}

TEST_CASE("form bounds flag bounded potentials as admissible") {
    Hamiltonian H(Space(1), Dispersion::quadratic(1),
                  {PotentialTerm(Subspace::zero(1), RadialFn::gaussian_well(1, -2.0, 1.0))});
    auto rows = form_bound_check(H);
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0].mu == 0.0);
    REQUIRE(rows[0].nu == Catch::Approx(2.0));
    REQUIRE(form_bounds_admissible(rows));
}

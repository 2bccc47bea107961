#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "floq/dirac.hpp"
#include "floq/quasi.hpp"

using namespace floq;

namespace {
constexpr double PI = 3.14159265358979323846;
const Lattice square(2 * PI, cplx(0.0, 2 * PI));

PeriodicField random_field(const Lattice& lat, int N, int bandwidth, std::mt19937& rng,
                           double amp = 1.0) {
    std::uniform_real_distribution<double> d(-amp, amp);
    PeriodicField f(lat, N);
    for (int m = -bandwidth; m <= bandwidth; ++m)
        for (int n = -bandwidth; n <= bandwidth; ++n) f.at(m, n) = cplx(d(rng), d(rng));
    return f;
}
} // namespace

TEST_CASE("dual basis on the square lattice") {
    auto a1 = square.alpha1(), a2 = square.alpha2();
    CHECK(a1[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a1[1] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(a2[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(a2[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("dual basis of a sheared lattice solves the 2x2 system") {
    Lattice lat(2 * PI, cplx(PI, 2 * PI));
    auto a1 = lat.alpha1(), a2 = lat.alpha2();
    CHECK(a1[0] == doctest::Approx(1.0));
    CHECK(a1[1] == doctest::Approx(-0.5));
    CHECK(a2[0] == doctest::Approx(0.0));
    CHECK(a2[1] == doctest::Approx(1.0));
}

TEST_CASE("collinear periods are rejected") {
    CHECK_THROWS_AS(Lattice(2 * PI, 4 * PI), invalid_input);
    CHECK_THROWS_AS(Lattice(cplx(0, 2 * PI), 2 * PI), invalid_input); // negative orientation
}

TEST_CASE("field evaluation: constants and single modes") {
    auto c = PeriodicField::constant(square, 4, cplx(0.3, -0.7));
    CHECK(std::abs(c.eval(cplx(1.1, 2.2)) - cplx(0.3, -0.7)) < 1e-15);
    auto e10 = PeriodicField::basis_mode(square, 4, 1, 0);
    CHECK(std::abs(e10.eval(PI) - cplx(-1.0, 0.0)) < 1e-14); // e^{i pi}
}

TEST_CASE("periodicity of evaluation is exact by construction") {
    std::mt19937 rng(7);
    auto f = random_field(square, 6, 3, rng);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    for (int t = 0; t < 20; ++t) {
        const cplx z(d(rng), d(rng));
        CHECK(std::abs(f.eval(z + square.gamma1()) - f.eval(z)) < 1e-13);
        CHECK(std::abs(f.eval(z + square.gamma2()) - f.eval(z)) < 1e-13);
    }
}

TEST_CASE("conjugation identity on coefficients") {
    std::mt19937 rng(11);
    auto f = random_field(square, 5, 5, rng);
    auto fc = f.conjugated();
    const cplx z(0.37, -1.21);
    CHECK(std::abs(fc.eval(z) - std::conj(f.eval(z))) < 1e-12);
}

TEST_CASE("products: identity, mode cancellation, trig identity") {
    auto one = PeriodicField::constant(square, 4, 1.0);
    std::mt19937 rng(3);
    auto f = random_field(square, 4, 4, rng);
    auto p = mul_fields(f, one, 4);
    for (int m = -4; m <= 4; ++m)
        for (int n = -4; n <= 4; ++n) CHECK(std::abs(p.at(m, n) - f.at(m, n)) < 1e-14);

    auto e10 = PeriodicField::basis_mode(square, 2, 1, 0);
    auto em10 = PeriodicField::basis_mode(square, 2, -1, 0);
    auto q = mul_fields(e10, em10, 2);
    CHECK(std::abs(q.at(0, 0) - 1.0) < 1e-14);
    CHECK(q.norm() == doctest::Approx(1.0).epsilon(1e-12));

    // sin(y)^2 = 1/2 - cos(2y)/2
    PeriodicField siny(square, 4);
    siny.at(0, 1) = cplx(0.0, -0.5);
    siny.at(0, -1) = cplx(0.0, 0.5);
    auto s2 = mul_fields(siny, siny, 4);
    CHECK(std::abs(s2.at(0, 0) - 0.5) < 1e-14);
    CHECK(std::abs(s2.at(0, 2) + 0.25) < 1e-14);
    CHECK(std::abs(s2.at(0, -2) + 0.25) < 1e-14);
}

TEST_CASE("product exactness below the cutoff") {
    std::mt19937 rng(19);
    auto f = random_field(square, 8, 3, rng);
    auto g = random_field(square, 8, 4, rng);
    auto p = mul_fields(f, g); // exact band 16
    const cplx z(1.234, -0.567);
    CHECK(std::abs(p.eval(z) - f.eval(z) * g.eval(z)) < 1e-10 * (1 + f.norm() * g.norm()));
}

TEST_CASE("solve_shifted round-trips and flags resonances") {
    // d on the square lattice has symbol (n+im)/2
    CHECK(square.d_symbol(1, 0) == cplx(0.0, 0.5));
    CHECK(square.d_symbol(0, 1) == cplx(0.5, 0.0));

    auto one = PeriodicField::constant(square, 3, 1.0);
    auto f = solve_shifted(Deriv::Holomorphic, 1.0, one);
    CHECK(std::abs(f.at(0, 0) - 1.0) < 1e-15);

    auto e10 = PeriodicField::basis_mode(square, 3, 1, 0);
    auto g = solve_shifted(Deriv::Holomorphic, 1.0, e10);
    CHECK(std::abs(g.at(1, 0) - 1.0 / cplx(1.0, 0.5)) < 1e-15);

    std::mt19937 rng(5);
    auto h = random_field(square, 6, 6, rng);
    for (auto dir : {Deriv::Holomorphic, Deriv::Antiholomorphic}) {
        const cplx shift(0.31, -0.12);
        auto u = solve_shifted(dir, shift, h);
        auto back = derivative(u, dir);
        PeriodicField su = u;
        su *= shift;
        back += su;
        back -= h;
        CHECK(back.norm() <= 1e-12 * h.norm());
    }

    auto bad = PeriodicField::basis_mode(square, 3, 0, 1);
    CHECK_THROWS_AS(solve_shifted(Deriv::Holomorphic, -0.5, bad), resonance_error);
}

TEST_CASE("multipliers: trivial, Clifford exponents, equal-class comparison") {
    auto [k1, k2] = multipliers_of({0.0, 0.0}, square);
    CHECK(std::abs(k1 - 1.0) < 1e-15);
    CHECK(std::abs(k2 - 1.0) < 1e-15);

    ExponentPair clifford(cplx(-0.25, -0.25), cplx(0.25, -0.25));
    auto [c1, c2] = multipliers_of(clifford, square);
    CHECK(std::abs(c1 + 1.0) < 1e-14);
    CHECK(std::abs(c2 + 1.0) < 1e-14);

    ExponentPair other(cplx(0.25, 0.25), cplx(-0.25, 0.25));
    auto [o1, o2] = multipliers_of(other, square);
    CHECK(std::abs(o1 + 1.0) < 1e-14);
    CHECK(std::abs(o2 + 1.0) < 1e-14);
    auto mode = mode_shift_between(clifford, other, square);
    REQUIRE(mode.has_value());
    CHECK((*mode)[0] == 1);
    CHECK((*mode)[1] == 1);
    CHECK(!mode_shift_between(clifford, {0.1, 0.2}, square).has_value());
}

TEST_CASE("exponents_from_multipliers uses the principal branch") {
    auto e = exponents_from_multipliers(-1.0, -1.0, square);
    CHECK(std::abs(e.mu - cplx(0.25, 0.25)) < 1e-14);
    CHECK(std::abs(e.nu - cplx(-0.25, 0.25)) < 1e-14);
}

TEST_CASE("star involution: constants, multipliers, double application") {
    auto one = PeriodicField::constant(square, 3, 1.0);
    auto zero = PeriodicField::constant(square, 3, 0.0);
    QuasiPeriodicFunction psi({cplx(0.2, 0.1), cplx(-0.3, 0.4)}, one, zero);
    auto st = star_involution(psi);
    CHECK(std::abs(st.comp(0).at(0, 0)) < 1e-15);
    CHECK(std::abs(st.comp(1).at(0, 0) + 1.0) < 1e-15);

    auto [k1, k2] = psi.multipliers();
    auto [s1, s2] = st.multipliers();
    CHECK(std::abs(s1 - std::conj(k1)) < 1e-12);
    CHECK(std::abs(s2 - std::conj(k2)) < 1e-12);

    auto twice = star_involution(st);
    for (int k = 0; k < 2; ++k) {
        PeriodicField diff = twice.comp(k) + psi.comp(k); // psi** = -psi
        CHECK(diff.norm() < 1e-15);
    }
}

TEST_CASE("star involution preserves the Dirac residual norm") {
    std::mt19937 rng(23);
    auto U = random_field(square, 5, 2, rng, 0.4);
    DiracPotential pot(U);
    QuasiPeriodicFunction psi({cplx(0.13, -0.21), cplx(0.05, 0.31)},
                              random_field(square, 5, 5, rng), random_field(square, 5, 5, rng));
    auto r = apply_dirac(pot, psi);
    auto rs = apply_dirac(pot, star_involution(psi));
    CHECK(std::abs(r.norm() - rs.norm()) <= 1e-12 * r.norm());
}

TEST_CASE("field csv round-trip") {
    std::mt19937 rng(31);
    auto f = random_field(square, 3, 3, rng);
    std::ostringstream os;
    f.write_csv(os);
    std::istringstream is(os.str());
    auto g = PeriodicField::read_csv(is);
    CHECK(g.cutoff() == f.cutoff());
    PeriodicField diff = g - f;
    CHECK(diff.norm() == 0.0); // 17 significant digits round-trip exactly
}

TEST_CASE("quasi-periodic boundary condition on grids") {
    std::mt19937 rng(41);
    ExponentPair e(cplx(0.21, -0.11), cplx(-0.07, 0.17));
    QuasiPeriodicFunction psi(e, random_field(square, 4, 4, rng),
                              random_field(square, 4, 4, rng));
    auto [k1, k2] = psi.multipliers();
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int t = 0; t < 10; ++t) {
        const cplx z(d(rng), d(rng));
        CHECK(std::abs(psi.eval(z + square.gamma1()) - k1 * psi.eval(z)) <
              1e-12 * (1 + std::abs(k1 * psi.eval(z))));
        CHECK(std::abs(psi.eval(z + square.gamma2()) - k2 * psi.eval(z)) <
              1e-12 * (1 + std::abs(k2 * psi.eval(z))));
    }
}

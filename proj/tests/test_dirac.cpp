#include <doctest.h>

#include <cmath>
#include <random>

#include "floq/dirac.hpp"

using namespace floq;

namespace {
constexpr double PI = 3.14159265358979323846;
const Lattice square(2 * PI, cplx(0.0, 2 * PI));
const cplx u_cliff(0.25, 0.25);

PeriodicField random_real_yfield(int N, int bw, std::mt19937& rng, double amp) {
    std::uniform_real_distribution<double> d(-amp, amp);
    PeriodicField f(square, N);
    for (int n = 1; n <= bw; ++n) {
        const cplx c(d(rng), d(rng));
        f.at(0, n) = c;
        f.at(0, -n) = std::conj(c);
    }
    f.at(0, 0) = d(rng);
    return f;
}
} // namespace

TEST_CASE("assemble_dirac: free operator has diagonal derivative blocks") {
    DiracPotential pot(PeriodicField::constant(square, 2, 0.0));
    auto D = assemble_dirac(pot, {0.0, 0.0}, false);
    const int M = 25;
    CHECK(D.rows() == 2 * M);
    CHECK(D.topLeftCorner(M, M).norm() == 0.0);
    CHECK(D.bottomRightCorner(M, M).norm() == 0.0);
    // derivative blocks carry the symbols
    int i = 0;
    for (int m = -2; m <= 2; ++m)
        for (int n = -2; n <= 2; ++n, ++i) {
            CHECK(std::abs(D(i, M + i) - square.d_symbol(m, n)) < 1e-15);
            CHECK(std::abs(D(M + i, i) + square.dbar_symbol(m, n)) < 1e-15);
        }
}

TEST_CASE("constant potential decouples into 2x2 mode blocks") {
    DiracPotential pot(PeriodicField::constant(square, 3, u_cliff));
    const ExponentPair e(cplx(0.1, 0.2), cplx(-0.3, 0.05));
    auto D = assemble_dirac(pot, e, false);
    const int M = 49;
    // off-diagonal entries of the multiplication blocks vanish
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j)
            if (i != j) {
                CHECK(std::abs(D(i, j)) == 0.0);
                CHECK(std::abs(D(M + i, M + j)) == 0.0);
            }
    CHECK(std::abs(D(0, 0) - u_cliff) < 1e-15);
    CHECK(std::abs(D(M, M) - std::conj(u_cliff)) < 1e-15);
}

TEST_CASE("kernel singular values: free operator at trivial multipliers") {
    DiracPotential pot(PeriodicField::constant(square, 6, 0.0));
    auto ks = kernel_singular_values(pot, {1.0, 1.0}, 4);
    CHECK(ks.smallest[0] < 1e-14);
    CHECK(ks.smallest[1] < 1e-14); // constants (1,0) and (0,1)
}

TEST_CASE("kernel singular values: Clifford count 4 via the mode equation") {
    DiracPotential pot(PeriodicField::constant(square, 10, u_cliff));
    auto ks = kernel_singular_values(pot, {-1.0, -1.0}, 6);
    int below = 0;
    for (double s : ks.smallest)
        if (s < 1e-8) ++below;
    CHECK(below == 4);
    CHECK(ks.smallest[4] > 1e-2);
    CHECK(kernel_dimension(ks) == 4);
}

TEST_CASE("block and dense kernel paths agree") {
    std::mt19937 rng(2);
    PeriodicField Uy = random_real_yfield(5, 2, rng, 0.3);
    DiracPotential pot(Uy);
    auto a = kernel_singular_values(pot, {cplx(0.7, 0.3), cplx(-0.8, 0.4)}, 6);
    // force the dense path by planting a negligible x-mode
    PeriodicField U2 = Uy;
    U2.at(1, 0) = 1e-300;
    DiracPotential pot2(U2);
    auto b = kernel_singular_values(pot2, {cplx(0.7, 0.3), cplx(-0.8, 0.4)}, 6);
    for (int i = 0; i < 6; ++i)
        CHECK(a.smallest[i] == doctest::Approx(b.smallest[i]).epsilon(1e-9));
}

TEST_CASE("slice of the free operator is the symbol lattice") {
    DiracPotential pot(PeriodicField::constant(square, 4, 0.0));
    auto s = slice_spectrum(pot, 1.0);
    REQUIRE(int(s.entries.size()) == 81);
    for (const auto& e : s.entries) {
        const cplx expect = -square.dbar_symbol(e.dom_m, e.dom_n);
        CHECK(std::abs(e.nu - expect) < 1e-12);
        CHECK(e.residual < 1e-12);
    }
}

TEST_CASE("slice resonance at mu = 0 is flagged") {
    DiracPotential pot(PeriodicField::constant(square, 3, u_cliff));
    CHECK_THROWS_AS(slice_spectrum(pot, 0.0), resonance_error);
}

TEST_CASE("constant-potential slice matches the closed form") {
    const int N = 8;
    DiracPotential pot(PeriodicField::constant(square, N, u_cliff));
    const cplx mu = 0.5;
    auto s = slice_spectrum(pot, mu);
    double worst = 0.0;
    for (const auto& e : s.entries) {
        const cplx d = square.d_symbol(e.dom_m, e.dom_n);
        const cplx db = square.dbar_symbol(e.dom_m, e.dom_n);
        const cplx expect = -db - std::norm(u_cliff) / (d + mu);
        worst = std::max(worst, std::abs(e.nu - expect) / std::abs(expect));
    }
    CHECK(worst < 1e-10);
    // mode (0,0): nu = -1/4, kappa2 = exp(2 pi i (mu - nu)) = -i
    bool found = false;
    for (const auto& e : s.entries)
        if (e.dom_m == 0 && e.dom_n == 0) {
            found = true;
            CHECK(std::abs(e.nu + 0.25) < 1e-12);
            auto [k1, k2] = multipliers_of({mu, e.nu}, square);
            CHECK(std::abs(k2 - cplx(0.0, -1.0)) < 1e-10);
        }
    CHECK(found);
}

TEST_CASE("slice eigenvalues converge once the cutoff clears the bandwidth") {
    std::mt19937 rng(5);
    PeriodicField Uy = random_real_yfield(8, 2, rng, 0.35);
    const cplx mu(0.23, 0.11);
    auto a = slice_spectrum(DiracPotential(Uy), mu, {false, false, 8});
    auto b = slice_spectrum(DiracPotential(Uy.resized(12)), mu, {false, false, 12});
    double worst = 0.0;
    for (const auto& ea : a.entries) {
        if (std::max(std::abs(ea.dom_m), std::abs(ea.dom_n)) > 4) continue;
        double best = 1e9;
        for (const auto& eb : b.entries) best = std::min(best, std::abs(ea.nu - eb.nu));
        worst = std::max(worst, best);
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("floquet function of the free operator is a pure exponential") {
    DiracPotential pot(PeriodicField::constant(square, 3, 0.0));
    auto s = slice_spectrum(pot, 1.0);
    int idx = -1;
    for (int i = 0; i < int(s.entries.size()); ++i)
        if (s.entries[i].dom_m == 0 && s.entries[i].dom_n == 0) idx = i;
    REQUIRE(idx >= 0);
    auto psi = floquet_function(pot, 1.0, idx);
    CHECK(std::abs(psi.exponents().nu) < 1e-12);
    CHECK(std::abs(std::abs(psi.comp(0).at(0, 0)) - 1.0) < 1e-12);
    CHECK(psi.comp(1).norm() < 1e-12);
    CHECK(dirac_residual(pot, psi) < 1e-12);
}

TEST_CASE("floquet function residual meets the acceptance threshold") {
    std::mt19937 rng(8);
    PeriodicField Uy = random_real_yfield(8, 2, rng, 0.3);
    DiracPotential pot(Uy);
    auto psi = floquet_function(pot, cplx(0.21, 0.13), 40, {false, 1e-8, 32});
    CHECK(dirac_residual(pot, psi) <= 1e-8);
}

TEST_CASE("Lemma 1: kernel dimensions of D and the adjoint agree") {
    std::mt19937 rng(13);
    PeriodicField U = random_real_yfield(6, 2, rng, 0.3);
    U.at(0, 1) += cplx(0.0, 0.1); // make it genuinely complex
    DiracPotential pot(U);
    std::uniform_real_distribution<double> d(-0.6, 0.6);
    for (int t = 0; t < 10; ++t) {
        const cplx k1 = std::polar(std::exp(d(rng)), d(rng));
        const cplx k2(d(rng) + 1.2, d(rng));
        auto a = kernel_singular_values(pot, {k1, k2}, 8);
        auto b = kernel_singular_values(pot, {std::conj(k1), std::conj(k2)}, 8, true);
        int ca = 0, cb = 0;
        for (double s : a.smallest)
            if (s < 1e-8 * a.sigma_max) ++ca;
        for (double s : b.smallest)
            if (s < 1e-8 * b.sigma_max) ++cb;
        CHECK(ca == cb);
        // Hermitian conjugacy matches the whole singular spectra
        for (int i = 0; i < 8; ++i)
            CHECK(a.smallest[i] == doctest::Approx(b.smallest[i]).epsilon(1e-8));
    }
}

TEST_CASE("Lemma 2: star-involuted branch appears in the partner slice") {
    std::mt19937 rng(17);
    PeriodicField U = random_real_yfield(7, 2, rng, 0.3);
    DiracPotential pot(U);
    const cplx mu(0.19, -0.23);
    auto s = slice_spectrum(pot, mu);
    const SliceEntry* pick = nullptr;
    for (const auto& e : s.entries)
        if (e.dom_m == 0 && e.dom_n == 0) pick = &e;
    REQUIRE(pick != nullptr);
    auto s2 = slice_spectrum(pot, std::conj(pick->nu));
    double best = 1e9;
    for (const auto& e : s2.entries) best = std::min(best, std::abs(e.nu - std::conj(mu)));
    CHECK(best < 1e-8);
}

TEST_CASE("cloud of the free operator is the exact exponential lattice") {
    DiracPotential pot(PeriodicField::constant(square, 6, 0.0));
    CloudOptions co;
    co.margin = 2;
    auto cloud = multiplier_cloud(pot, {cplx(0.4, 0.2)}, co);
    REQUIRE(cloud.samples.size() == 1);
    REQUIRE(cloud.samples[0].ok);
    CHECK(cloud.samples[0].records.size() == 81); // (2*(6-2)+1)^2
    for (const auto& r : cloud.samples[0].records) {
        const cplx nu_exact = -square.dbar_symbol(r.dom_m, r.dom_n);
        CHECK(std::abs(r.nu - nu_exact) < 1e-12);
    }
}

TEST_CASE("clouds flag resonant samples and distance skips them") {
    DiracPotential pot(PeriodicField::constant(square, 5, u_cliff));
    CloudOptions co;
    co.margin = 2;
    auto cloud = multiplier_cloud(pot, {0.0, cplx(0.4, 0.1)}, co);
    CHECK(!cloud.samples[0].ok);
    CHECK(cloud.samples[1].ok);
    auto d = cloud_distance(cloud, cloud);
    CHECK(d.value == 0.0);
}

TEST_CASE("cloud negative control: a 0.1 cos x bump moves the multiplier set") {
    const int N = 8;
    DiracPotential base(PeriodicField::constant(square, N, u_cliff));
    PeriodicField bump = PeriodicField::constant(square, N, u_cliff);
    bump.at(1, 0) = 0.05;
    bump.at(-1, 0) = 0.05;
    DiracPotential pert(bump);
    CloudOptions co;
    co.margin = 4;
    const std::vector<cplx> contour{cplx(0.0, 0.2), cplx(0.0, 0.55)};
    auto ca = multiplier_cloud(base, contour, co);
    auto cb = multiplier_cloud(pert, contour, co);
    auto d = cloud_distance(ca, cb);
    CHECK(d.value > 1e-3);
}

TEST_CASE("gauge transform: admissibility and modulus") {
    DiracPotential pot(PeriodicField::constant(square, 4, u_cliff));
    auto same = gauge_transform(pot, 1.7, 0.0);
    CHECK(std::abs(same.U.at(0, 0) - u_cliff) < 1e-15);
    // b = i/2: Im(b g1) = pi, Im(b g2) = 0 -> admissible, one x-mode shift
    auto moved = gauge_transform(pot, 0.0, cplx(0.0, 0.5));
    CHECK(std::abs(moved.U.at(-1, 0) - u_cliff) < 1e-15);
    CHECK(std::abs(moved.U.at(0, 0)) == 0.0);
    // b = i/3: Im(b g1) = 2 pi/3, not in pi Z
    CHECK_THROWS_AS(gauge_transform(pot, 0.0, cplx(0.0, 1.0 / 3.0)), invalid_input);
    auto rot = gauge_transform(pot, cplx(0.0, 0.3), 0.0);
    CHECK(std::abs(std::abs(rot.U.at(0, 0)) - std::abs(u_cliff)) < 1e-15);
}

TEST_CASE("gauge covariance: rescaled cloud of the gauged potential matches") {
    std::mt19937 rng(29);
    PeriodicField U = random_real_yfield(7, 1, rng, 0.25);
    DiracPotential pot(U);
    const cplx b(0.0, 0.5); // admissible, mode (-1, 0)
    auto gauged = gauge_transform(pot, 0.3, b);

    const std::vector<cplx> contour{cplx(0.31, 0.17), cplx(-0.22, 0.41)};
    std::vector<cplx> shifted;
    for (auto m : contour) shifted.push_back(m + b);

    CloudOptions co;
    co.margin = 4;
    co.cutoff = 7;
    auto cg = multiplier_cloud(gauged, shifted, co);
    auto cb = multiplier_cloud(pot, contour, co);

    for (auto& s : cg.samples) {
        s.mu -= b;
        for (auto& r : s.records) {
            r.kappa1 *= std::exp(-b * square.gamma1());
            r.kappa2 *= std::exp(-b * square.gamma2());
            r.mu -= b;
        }
    }
    auto d = cloud_distance(cg, cb);
    CHECK(d.value < 1e-10);
}

TEST_CASE("cloud csv round-trip keeps the records") {
    DiracPotential pot(PeriodicField::constant(square, 5, u_cliff));
    CloudOptions co;
    co.margin = 3;
    auto cloud = multiplier_cloud(pot, {cplx(0.4, 0.1)}, co);
    auto text = cloud.to_csv();
    auto back = MultiplierCloud::from_csv(text);
    REQUIRE(back.samples.size() == 1);
    CHECK(back.samples[0].records.size() == cloud.samples[0].records.size());
    CHECK(!back.has_nu);
    auto d = cloud_distance(back, back);
    CHECK(d.value == 0.0);
}

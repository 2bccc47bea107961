#include "floq/fixtures.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "floq/fft.hpp"

namespace floq {

namespace {

constexpr double PI = 3.14159265358979323846;

Lattice square_lattice() { return Lattice(2 * PI, cplx(0.0, 2 * PI)); }

cplx a_fun(cplx lambda, cplx p) { return lambda / (lambda - p); }
cplx b_fun(cplx lambda, cplx p) { return p / (p - lambda); }

} // namespace

CliffordS3Data clifford_s3(int cutoff) {
    const Lattice lat = square_lattice();
    const cplx u(0.25, 0.25);
    const double s2 = std::sqrt(2.0);

    DiracPotential pot(PeriodicField::constant(lat, cutoff, u), false);

    // e^{-i(x+y)/2} = exp(mu z + nu conj z), mu = -(1+i)/4, nu = (1-i)/4
    const ExponentPair ePsi(cplx(-0.25, -0.25), cplx(0.25, -0.25));
    QuasiPeriodicFunction Psi(ePsi, PeriodicField::constant(lat, cutoff, 1.0 / s2),
                              PeriodicField::constant(lat, cutoff, 1.0 / s2));

    // e^{i(y-x)/2}: mu = (1-i)/4, nu = -(1+i)/4
    const ExponentPair ePhi(cplx(0.25, -0.25), cplx(-0.25, -0.25));
    QuasiPeriodicFunction Phi(ePhi, PeriodicField::constant(lat, cutoff, -1.0 / (2 * s2)),
                              PeriodicField::constant(lat, cutoff, 1.0 / (2 * s2)));

    return {std::move(pot), std::move(Psi), std::move(Phi), u};
}

double clifford_r3_value(double y) {
    const double s2 = std::sqrt(2.0);
    return std::sin(y) / (2 * s2 * (std::sin(y) - s2));
}

CliffordR3Data clifford_r3(int cutoff) {
    const Lattice lat = square_lattice();
    const int G = 2048;
    std::vector<cplx> samples(G);
    for (int j = 0; j < G; ++j) samples[j] = clifford_r3_value(2 * PI * j / G);
    fft::forward1d(samples, G);

    PeriodicField U(lat, cutoff);
    for (int n = -cutoff; n <= cutoff; ++n) {
        const cplx cn = samples[((n % G) + G) % G];
        const cplx cm = samples[(((-n) % G) + G) % G];
        U.at(0, n) = (cn + std::conj(cm)) / 2.0; // enforce realness exactly
    }

    const cplx u(0.25, 0.25);
    const cplx root = std::sqrt(cplx(-4.0, -2.0)); // principal branch
    const double s8 = std::sqrt(8.0);
    CliffordR3Data data{DiracPotential(std::move(U), true),
                        u,
                        {(cplx(-1.0, 1.0) + root) / (4.0 * std::sqrt(2.0)),
                         (cplx(-1.0, 1.0) - root) / (4.0 * std::sqrt(2.0)), 1.0 / s8},
                        {{{cplx(0.25, 0.25), cplx(-0.25, 0.25)},
                          {cplx(-0.25, -0.25), cplx(0.25, -0.25)}}}};
    return data;
}

BakerAkhiezerProfiles ba_profiles(const CliffordR3Data& data, int ygrid) {
    BakerAkhiezerProfiles out;
    out.grid = ygrid;
    out.q1.resize(ygrid);
    out.q2.resize(ygrid);
    out.t1.resize(ygrid);
    out.t2.resize(ygrid);

    const auto& gp = data.glued_pairs;
    const cplx la = gp[0][0], lb = gp[0][1], lc = gp[1][0], ld = gp[1][1];

    // temporary: solve the pair of gluing equations for one component family
    auto solve_family = [&](auto f, std::vector<cplx>& x1, std::vector<cplx>& x2) {
        const cplx f1a = f(la, data.poles[0]), f2a = f(la, data.poles[1]),
                   f3a = f(la, data.poles[2]);
        const cplx f1b = f(lb, data.poles[0]), f2b = f(lb, data.poles[1]),
                   f3b = f(lb, data.poles[2]);
        const cplx f1c = f(lc, data.poles[0]), f2c = f(lc, data.poles[1]),
                   f3c = f(lc, data.poles[2]);
        const cplx f1d = f(ld, data.poles[0]), f2d = f(ld, data.poles[1]),
                   f3d = f(ld, data.poles[2]);
        for (int j = 0; j < ygrid; ++j) {
            const double y = 2 * PI * j / ygrid;
            const cplx e = std::polar(1.0, y); // prefactor ratio e^{iy} across the first pair
            Eigen::Matrix2cd A;
            A << e * (f1a - f3a) - (f1b - f3b), e * (f2a - f3a) - (f2b - f3b),
                (f1c - f3c) / e - (f1d - f3d), (f2c - f3c) / e - (f2d - f3d);
            Eigen::Vector2cd rhs(f3b - e * f3a, f3d - f3c / e);
            const Eigen::JacobiSVD<Eigen::Matrix2cd> svd(A, Eigen::ComputeFullU |
                                                                Eigen::ComputeFullV);
            const double cond = svd.singularValues()(0) /
                                std::max(svd.singularValues()(1), 1e-300);
            if (svd.singularValues()(1) < 1e-12 * svd.singularValues()(0))
                throw singular_system_error("ba_profiles: singular gluing system at y", y);
            out.max_condition = std::max(out.max_condition, cond);
            const Eigen::Vector2cd sol = svd.solve(rhs);
            x1[j] = sol(0);
            x2[j] = sol(1);
        }
    };
    solve_family(a_fun, out.q1, out.q2);
    solve_family(b_fun, out.t1, out.t2);
    return out;
}

BakerAkhiezerEval baker_akhiezer_r3(const CliffordR3Data& data,
                                    const BakerAkhiezerProfiles& profiles, cplx lambda) {
    const double uu = std::norm(data.u); // 1/8
    if (std::abs(lambda) < 1e-12) throw invalid_input("baker_akhiezer_r3: lambda = 0");
    for (const auto& p : data.poles)
        if (std::abs(lambda - p) < 1e-12)
            throw invalid_input("baker_akhiezer_r3: lambda at a pole");
    BakerAkhiezerEval ev;
    ev.lambda = lambda;
    ev.k = lambda - uu / lambda;
    ev.beta = lambda + uu / lambda;
    ev.W1.resize(profiles.grid);
    ev.W2.resize(profiles.grid);
    for (int j = 0; j < profiles.grid; ++j) {
        ev.W1[j] = profiles.q1[j] * a_fun(lambda, data.poles[0]) +
                   profiles.q2[j] * a_fun(lambda, data.poles[1]) +
                   (1.0 - profiles.q1[j] - profiles.q2[j]) * a_fun(lambda, data.poles[2]);
        ev.W2[j] = profiles.t1[j] * b_fun(lambda, data.poles[0]) +
                   profiles.t2[j] * b_fun(lambda, data.poles[1]) +
                   (1.0 - profiles.t1[j] - profiles.t2[j]) * b_fun(lambda, data.poles[2]);
    }
    // exp(lambda z - (|u|^2/lambda) conj z): exponents (lambda, -|u|^2/lambda)
    ev.prefactor_multipliers =
        multipliers_of({lambda, -uu / lambda}, data.potential.U.lattice());
    return ev;
}

double ba_dirac_residual(const CliffordR3Data& data, const BakerAkhiezerEval& ev) {
    const int G = int(ev.W1.size());
    const double uu = std::norm(data.u);
    std::vector<cplx> d1 = ev.W1, d2 = ev.W2;
    fft::forward1d(d1, G);
    fft::forward1d(d2, G);
    for (int j = 0; j < G; ++j) {
        const int n = j <= G / 2 ? j : j - G;
        d1[j] *= cplx(0.0, double(n));
        d2[j] *= cplx(0.0, double(n));
    }
    fft::backward1d(d1, G);
    fft::backward1d(d2, G);
    const cplx I(0.0, 1.0);
    double rmax = 0.0, wmax = 0.0;
    for (int j = 0; j < G; ++j) {
        const double Uy = clifford_r3_value(2 * PI * j / G);
        const cplx r1 = Uy * ev.W1[j] + ev.lambda * ev.W2[j] - 0.5 * I * d2[j];
        const cplx r2 = (uu / ev.lambda) * ev.W1[j] - 0.5 * I * d1[j] + Uy * ev.W2[j];
        rmax = std::max({rmax, std::abs(r1), std::abs(r2)});
        wmax = std::max({wmax, std::abs(ev.W1[j]), std::abs(ev.W2[j])});
    }
    return wmax == 0.0 ? 0.0 : rmax / wmax;
}

DoublePointReport double_point_report(int cutoff) {
    const auto s3 = clifford_s3(cutoff);
    const auto r3 = clifford_r3(cutoff);
    const std::pair<cplx, cplx> minus_one{-1.0, -1.0};
    const auto ks3 = kernel_singular_values(s3.potential, minus_one, 8);
    const auto kr3 = kernel_singular_values(r3.potential, minus_one, 8);
    DoublePointReport rep;
    rep.svals_s3 = ks3.smallest;
    rep.svals_r3 = kr3.smallest;
    for (double s : ks3.smallest)
        if (s < 1e-8) ++rep.count_s3;
    for (double s : kr3.smallest)
        if (s < 1e-6) ++rep.count_r3;
    rep.margin_s3 = ks3.smallest.size() > 4 ? ks3.smallest[4] : 0.0;
    rep.margin_r3 = kr3.smallest.size() > 2 ? kr3.smallest[2] : 0.0;
    return rep;
}

} // namespace floq

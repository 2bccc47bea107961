#include "floq/spectral1d.hpp"

#include <algorithm>
#include <cmath>

namespace floq {

namespace {

constexpr double PI = 3.14159265358979323846;

// RK4 for Y' = A(x) Y, Y(0) = I, over [0, T]; A sampled at step ends and
// midpoints ahead of time by the caller.
Eigen::Matrix2cd integrate_2x2(const std::function<Eigen::Matrix2cd(double)>& A, double T,
                               int steps) {
    if (steps < 8) throw accuracy_error("monodromy: step count too small");
    const double h = T / steps;
    Eigen::Matrix2cd Y = Eigen::Matrix2cd::Identity();
    for (int s = 0; s < steps; ++s) {
        const double x = s * h;
        const Eigen::Matrix2cd A0 = A(x), Ah = A(x + h / 2), A1 = A(x + h);
        const Eigen::Matrix2cd k1 = A0 * Y;
        const Eigen::Matrix2cd k2 = Ah * (Y + (h / 2) * k1);
        const Eigen::Matrix2cd k3 = Ah * (Y + (h / 2) * k2);
        const Eigen::Matrix2cd k4 = A1 * (Y + h * k3);
        Y += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return Y;
}

MonodromyResult finish(Eigen::Matrix2cd M, cplx parameter, double T) {
    MonodromyResult out{{std::move(M), parameter, T}, 0.0, 0.0, 0.0};
    const cplx det = out.monodromy.det();
    if (std::abs(det - 1.0) > 1e-6)
        throw accuracy_error("monodromy: Wronskian drift " + std::to_string(std::abs(det - 1.0)) +
                             ", increase the step count");
    out.discriminant = out.monodromy.trace();
    const cplx half = out.discriminant / 2.0;
    const cplx root = std::sqrt(half * half - det);
    cplx kp = half + root, km = half - root;
    if (std::abs(kp) < std::abs(km)) std::swap(kp, km);
    out.kappa_plus = kp;
    out.kappa_minus = km;
    return out;
}

} // namespace

cplx Potential1D::eval(double x) const {
    cplx s = 0.0;
    for (const auto& [n, c] : coeffs) s += c * std::polar(1.0, 2 * PI * n * x / period);
    return s;
}

Potential1D Potential1D::zero(double T) { return {T, {}}; }

Potential1D Potential1D::constant(double T, cplx c) { return {T, {{0, c}}}; }

Potential1D Potential1D::single_mode(double T, int n, cplx c) { return {T, {{n, c}}}; }

Potential1D Potential1D::from_field_y(const PeriodicField& f) {
    if (!f.y_only()) throw invalid_input("from_field_y: potential must be x-independent");
    const Lattice& lat = f.lattice();
    if (std::abs(lat.gamma1().imag()) > 1e-12 || std::abs(lat.gamma2().real()) > 1e-12)
        throw invalid_input("from_field_y: square-type lattice (g1 real, g2 imaginary) required");
    Potential1D u;
    u.period = lat.gamma2().imag();
    for (int n = -f.cutoff(); n <= f.cutoff(); ++n)
        if (f.at(0, n) != 0.0) u.coeffs.emplace_back(n, f.at(0, n));
    return u;
}

MonodromyResult schrodinger_monodromy(const Potential1D& u, cplx E, int steps) {
    auto A = [&](double x) {
        Eigen::Matrix2cd a;
        a << 0.0, 1.0, u.eval(x) - E, 0.0;
        return a;
    };
    return finish(integrate_2x2(A, u.period, steps), E, u.period);
}

MonodromyResult nls_monodromy(const Potential1D& U, cplx k, int steps) {
    const cplx I(0.0, 1.0);
    auto A = [&](double y) {
        const cplx Uy = U.eval(y);
        Eigen::Matrix2cd a;
        a << I * k, -2.0 * I * std::conj(Uy), 2.0 * I * Uy, -I * k;
        return a;
    };
    return finish(integrate_2x2(A, U.period, steps), k, U.period);
}

std::vector<ResonantPoint> resonant_points(const Potential1D& u, double lo, double hi, int sign,
                                           ResonantOptions opt) {
    if (!(hi > lo)) throw invalid_input("resonant_points: empty window");
    if (sign != 1 && sign != -1) throw invalid_input("resonant_points: sign must be +-1");
    const double target = 2.0 * sign;
    auto f = [&](cplx E) { return schrodinger_monodromy(u, E, opt.steps).discriminant - target; };

    const int cells = std::max(8, int(std::ceil((hi - lo) * opt.scan_per_unit)));
    const double h = (hi - lo) / cells;
    std::vector<cplx> fs(cells + 1);
    for (int i = 0; i <= cells; ++i) fs[i] = f(lo + i * h);

    auto secant = [&](cplx e0, cplx e1, const std::function<cplx(cplx)>& g) {
        cplx g0 = g(e0), g1 = g(e1);
        for (int it = 0; it < 80; ++it) {
            if (std::abs(g1 - g0) < 1e-300) break;
            const cplx e2 = e1 - g1 * (e1 - e0) / (g1 - g0);
            e0 = e1;
            g0 = g1;
            e1 = e2;
            g1 = g(e2);
            if (std::abs(g1) < 1e-13 || std::abs(e1 - e0) < 1e-14 * (1.0 + std::abs(e1))) break;
        }
        return e1;
    };

    std::vector<cplx> roots;
    auto push_root = [&](cplx E) {
        if (std::abs(f(E)) > opt.accept_tol) return;
        for (const auto& r : roots)
            if (std::abs(r - E) < 1e-6 * (1.0 + std::abs(E))) return;
        roots.push_back(E);
    };

    const double dh = 1e-6;
    auto fprime = [&](cplx E) { return (f(E + dh) - f(E - dh)) / (2 * dh); };
    for (int i = 1; i <= cells; ++i) {
        const bool sign_change = (fs[i - 1].real() < 0) != (fs[i].real() < 0) &&
                                 std::abs(fs[i - 1].imag()) < 0.1 && std::abs(fs[i].imag()) < 0.1;
        const bool local_min = i < cells && std::abs(fs[i]) <= std::abs(fs[i - 1]) &&
                               std::abs(fs[i]) <= std::abs(fs[i + 1]) && std::abs(fs[i]) < 0.1;
        if (sign_change) push_root(secant(lo + (i - 1) * h, lo + i * h, f));
        if (local_min) {
            // double roots sit at stationary points of Delta
            const cplx e = secant(lo + (i - 1) * h, lo + (i + 1) * h, fprime);
            push_root(e);
        }
    }

    std::vector<ResonantPoint> out;
    for (const auto& E : roots) {
        const auto mr = schrodinger_monodromy(u, E, opt.steps);
        Eigen::Matrix2cd dev = mr.monodromy.M - double(sign) * Eigen::Matrix2cd::Identity();
        const double defect = dev.cwiseAbs().maxCoeff();
        out.push_back({E, sign,
                       defect < opt.diag_tol ? ResonantPoint::Diagonalizable
                                             : ResonantPoint::Jordan,
                       defect, std::abs(mr.discriminant - target)});
    }
    std::sort(out.begin(), out.end(), [](const ResonantPoint& a, const ResonantPoint& b) {
        return a.energy.real() < b.energy.real();
    });
    return out;
}

double reduction_crosscheck(const DiracPotential& pot, cplx k, CrosscheckOptions opt) {
    if (!pot.U.y_only()) throw invalid_input("reduction_crosscheck: potential must be y-only");
    const int N = opt.cutoff > 0 ? opt.cutoff : pot.U.cutoff();
    if (opt.margin < 0 || opt.margin >= N)
        throw invalid_input("reduction_crosscheck: margin must lie in [0, cutoff)");
    const Potential1D u1d = Potential1D::from_field_y(pot.U.resized(N));
    const Lattice& lat = pot.U.lattice();
    const cplx mu = k / 2.0;

    SliceOptions so;
    so.cutoff = N;
    const SliceSpectrum s = slice_spectrum(pot, mu, so);

    double defect = 0.0;
    for (const auto& e : s.entries) {
        if (std::max(std::abs(e.dom_m), std::abs(e.dom_n)) > N - opt.margin) continue;
        const cplx keff = mu + e.nu + cplx(0.0, double(e.dom_m));
        const auto mr = nls_monodromy(u1d, keff, opt.steps);
        const cplx kappa2 = std::exp(mu * lat.gamma2() + e.nu * std::conj(lat.gamma2()));
        auto logdist = [&](cplx a, cplx b) {
            const double dr = std::log(std::abs(a)) - std::log(std::abs(b));
            double da = std::arg(a) - std::arg(b);
            while (da > PI) da -= 2 * PI;
            while (da <= -PI) da += 2 * PI;
            return std::sqrt(dr * dr + da * da);
        };
        defect = std::max(defect, std::min(logdist(kappa2, mr.kappa_plus),
                                           logdist(kappa2, mr.kappa_minus)));
    }
    return defect;
}

Omega1DResult omega_1d(const Pair1D& pair, cplx k, const std::vector<cplx>& psi1,
                       const std::vector<cplx>& psi2) {
    if (std::abs(k - pair.k1) < 1e-10)
        throw obstruction_error("omega_1d: pole k(lambda) = k1 (reduced Lset point)");
    if (pair.PhiD1.size() != psi1.size() || pair.PhiD2.size() != psi2.size() ||
        psi1.size() != psi2.size())
        throw invalid_input("omega_1d: profile grids differ");
    Omega1DResult out{pair.k1, k, std::vector<cplx>(psi1.size())};
    for (size_t j = 0; j < psi1.size(); ++j)
        out.profile[j] = (pair.PhiD1[j] * psi1[j] - pair.PhiD2[j] * psi2[j]) / (k - pair.k1);
    return out;
}

} // namespace floq

#include "floq/weierstrass.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "floq/io.hpp"

namespace floq {

std::vector<std::array<double, 4>> ImmersedTorus::eval_grid(int P) const {
    std::vector<std::array<double, 4>> out(size_t(P) * P);
    for (int k = 0; k < 4; ++k) {
        const auto vals = coords[k].periodic.eval_grid(P);
        for (int a = 0; a < P; ++a)
            for (int b = 0; b < P; ++b) {
                const cplx z = lattice().point(double(a) / P, double(b) / P);
                out[size_t(a) * P + b][k] =
                    vals[size_t(a) * P + b].real() + 2.0 * (coords[k].linear_coeff * z).real();
            }
    }
    return out;
}

std::array<PeriodicField, 4> coordinate_derivatives(const QuasiPeriodicFunction& Psi,
                                                    const QuasiPeriodicFunction& Phi) {
    if (!Psi.is_spinor() || !Phi.is_spinor())
        throw invalid_input("coordinate_derivatives: spinors expected");
    const auto [kp1, kp2] = Psi.multipliers();
    const auto [kf1, kf2] = Phi.multipliers();
    const double tol = 1e-9;
    if (std::abs(kp1.imag()) > tol * (1.0 + std::abs(kp1)) ||
        std::abs(kp2.imag()) > tol * (1.0 + std::abs(kp2)))
        throw invalid_input("coordinate_derivatives: Psi multipliers are not real");
    if (std::abs(kp1 * kf1 - 1.0) > tol || std::abs(kp2 * kf2 - 1.0) > tol)
        throw invalid_input("coordinate_derivatives: Phi multipliers are not reciprocal");

    const ExponentPair zero(0.0, 0.0);
    auto product = [&](const QuasiPeriodicFunction& A, int ka, bool conjA,
                       const QuasiPeriodicFunction& B, int kb, bool conjB) {
        const ExponentPair ea = conjA ? A.exponents().conj_pair() : A.exponents();
        const ExponentPair eb = conjB ? B.exponents().conj_pair() : B.exponents();
        PeriodicField fa = conjA ? A.comp(ka).conjugated() : A.comp(ka);
        PeriodicField fb = conjB ? B.comp(kb).conjugated() : B.comp(kb);
        QuasiPeriodicFunction prod(ea + eb, mul_fields(fa, fb));
        return prod.recentered(zero, /*grow=*/true).comp(0);
    };

    const PeriodicField CC = product(Phi, 1, true, Psi, 1, true);  // conj Phi2 conj Psi2
    const PeriodicField PP = product(Phi, 0, false, Psi, 0, false); // Phi1 Psi1
    const PeriodicField CP = product(Phi, 1, true, Psi, 0, false);  // conj Phi2 Psi1
    const PeriodicField PC = product(Phi, 0, false, Psi, 1, true);  // Phi1 conj Psi2

    const cplx I(0.0, 1.0);
    PeriodicField x1 = CC + PP;
    x1 *= I / 2.0;
    PeriodicField x2 = CC - PP;
    x2 *= 0.5;
    PeriodicField x3 = CP + PC;
    x3 *= 0.5;
    PeriodicField x4 = CP - PC;
    x4 *= I / 2.0;
    return {std::move(x1), std::move(x2), std::move(x3), std::move(x4)};
}

ImmersedTorus integrate_surface(const std::array<PeriodicField, 4>& xz) {
    ImmersedTorus t{{CoordinateFunction{xz[0], 0.0}, CoordinateFunction{xz[1], 0.0},
                     CoordinateFunction{xz[2], 0.0}, CoordinateFunction{xz[3], 0.0}}};
    const Lattice& lat = xz[0].lattice();
    for (int k = 0; k < 4; ++k) {
        const PeriodicField& g = xz[k];
        const int N = g.cutoff();
        PeriodicField X(lat, N);
        for (int m = -N; m <= N; ++m)
            for (int n = -N; n <= N; ++n) {
                if (m == 0 && n == 0) continue;
                X.at(m, n) = g.at(m, n) / lat.d_symbol(m, n);
            }
        cplx sum = 0.0;
        for (const auto& c : X.coeffs()) sum += c;
        X.at(0, 0) = -sum; // x(0) = 0
        t.coords[k].periodic = std::move(X);
        t.coords[k].linear_coeff = g.at(0, 0);
        for (int j = 1; j <= 2; ++j)
            t.period_residuals[k][j - 1] =
                std::abs(2.0 * (g.at(0, 0) * lat.gamma(j)).real());
    }
    const int P = 32;
    for (int k = 0; k < 4; ++k) {
        const auto vals = t.coords[k].periodic.eval_grid(P);
        for (const auto& v : vals) t.max_imag = std::max(t.max_imag, std::abs(v.imag()));
    }
    return t;
}

double willmore(const DiracPotential& pot) {
    double s = 0.0;
    for (const auto& c : pot.U.coeffs()) s += std::norm(c);
    return 4.0 * pot.U.lattice().cell_area() * s;
}

SphereFit sphere_fit(const ImmersedTorus& torus, int grid) {
    const auto pts = torus.eval_grid(grid);
    const int n = int(pts.size());
    Eigen::MatrixXd A(n, 5);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        double r2 = 0.0;
        for (int k = 0; k < 4; ++k) {
            A(i, k) = 2.0 * pts[i][k];
            r2 += pts[i][k] * pts[i][k];
        }
        A(i, 4) = 1.0;
        y(i) = r2;
    }
    const Eigen::VectorXd sol = A.colPivHouseholderQr().solve(y);
    const double r2 = sol(4) + sol.head(4).squaredNorm();
    if (r2 <= 0.0 || std::sqrt(r2) < 1e-12)
        throw numerical_error("sphere_fit: degenerate fit (radius ~ 0)");
    SphereFit fit{{sol(0), sol(1), sol(2), sol(3)}, std::sqrt(r2), 0.0};
    for (const auto& p : pts) {
        double d2 = 0.0;
        for (int k = 0; k < 4; ++k) d2 += (p[k] - fit.center[k]) * (p[k] - fit.center[k]);
        fit.max_deviation = std::max(fit.max_deviation, std::abs(std::sqrt(d2) - fit.radius));
    }
    return fit;
}

std::string export_obj(const ImmersedTorus& torus, int grid) {
    const auto pts = torus.eval_grid(grid);
    std::ostringstream os;
    for (const auto& p : pts)
        os << "v " << io::fmt(p[0]) << ' ' << io::fmt(p[1]) << ' ' << io::fmt(p[2]) << ' '
           << io::fmt(p[3]) << '\n';
    auto id = [&](int a, int b) { return (a % grid) * grid + (b % grid) + 1; };
    for (int a = 0; a < grid; ++a)
        for (int b = 0; b < grid; ++b) {
            os << "f " << id(a, b) << ' ' << id(a + 1, b) << ' ' << id(a + 1, b + 1) << '\n';
            os << "f " << id(a, b) << ' ' << id(a + 1, b + 1) << ' ' << id(a, b + 1) << '\n';
        }
    return os.str();
}

} // namespace floq

#ifndef FLOQ_WEIERSTRASS_HPP
#define FLOQ_WEIERSTRASS_HPP

#include <array>

#include "floq/dirac.hpp"

namespace floq {

// One Euclidean coordinate of an immersed torus: a real periodic part plus a
// linear drift 2*Re(lc * z) coming from the zero mode of x_z (nonzero drift
// means the immersion does not close).
struct CoordinateFunction {
    PeriodicField periodic;
    cplx linear_coeff{0.0};

    std::array<double, 2> linear_vector() const {
        return {2.0 * linear_coeff.real(), -2.0 * linear_coeff.imag()};
    }
    double eval(cplx z) const {
        return periodic.eval(z).real() + 2.0 * (linear_coeff * z).real();
    }
};

struct ImmersedTorus {
    std::array<CoordinateFunction, 4> coords;
    // |x^k(gamma_j) - x^k(0)| from the linear parts
    std::array<std::array<double, 2>, 4> period_residuals{};
    double max_imag = 0.0; // largest imaginary part met on the diagnostic grid

    const Lattice& lattice() const { return coords[0].periodic.lattice(); }
    // row-major (a,b) grid of 4-vectors at z = (a/P) gamma1 + (b/P) gamma2
    std::vector<std::array<double, 4>> eval_grid(int P) const;
};

// x^k_z from the spinor pair (multipliers must be real and reciprocal, which
// makes all four products exactly periodic):
//   x1_z = (i/2)(conj Phi2 conj Psi2 + Phi1 Psi1)
//   x2_z = (1/2)(conj Phi2 conj Psi2 - Phi1 Psi1)
//   x3_z = (1/2)(conj Phi2 Psi1 + Phi1 conj Psi2)
//   x4_z = (i/2)(conj Phi2 Psi1 - Phi1 conj Psi2)
std::array<PeriodicField, 4> coordinate_derivatives(const QuasiPeriodicFunction& Psi,
                                                    const QuasiPeriodicFunction& Phi);

// Spectral antiderivative with x(0) = 0; zero modes become linear parts.
ImmersedTorus integrate_surface(const std::array<PeriodicField, 4>& xz);

// W = 4 * cell area * (zero mode of |U|^2) = 4 * int |U|^2 dx dy.
double willmore(const DiracPotential& pot);

struct SphereFit {
    std::array<double, 4> center;
    double radius;
    double max_deviation;
};

SphereFit sphere_fit(const ImmersedTorus& torus, int grid = 64);

// OBJ-style mesh, vertices carry all four coordinates; grid quads split into
// triangles with torus wrap-around.
std::string export_obj(const ImmersedTorus& torus, int grid);

} // namespace floq

#endif

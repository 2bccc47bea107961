#ifndef FLOQ_CONFORMAL_HPP
#define FLOQ_CONFORMAL_HPP

#include "floq/darboux.hpp"
#include "floq/weierstrass.hpp"

namespace floq {

// State of the conformal flow: potential and the spinor pair of the
// Weierstrass representation (real, mutually reciprocal multipliers).
struct FlowState {
    DiracPotential U;
    QuasiPeriodicFunction Psi, Phi;
    double tau = 0.0;
};

// Generator of the inversion flow on coordinates (Theorem-3 vector field).
std::array<double, 4> conformal_vector_field(const std::array<double, 4>& x);

struct TauDerivatives {
    PeriodicField dU;
    QuasiPeriodicFunction dPsi, dPhi;
};

// tau-derivatives of (U, Psi, Phi):
//   dU    = Phi1 conj(Psi1) - conj(Phi2) Psi2
//   dPsi1 = (x3-ix4) Psi1 - i(x1-ix2) conj(Psi2)
//   dPsi2 = (x3-ix4) Psi2 + i(x1-ix2) conj(Psi1)
//   dPhi1 = (x3+ix4) Phi1 - i(x1-ix2) conj(Phi2)
//   dPhi2 = (x3+ix4) Phi2 + i(x1-ix2) conj(Phi1)
// with coordinates reconstructed from the current spinors, x(0) = 0.
// Throws obstruction_error when the surface fails to close.
TauDerivatives tau_derivatives(const FlowState& s, double close_tol = 1e-8);

struct FlowOptions {
    double residual_tol = 1e-6;
    double close_tol = 1e-8;
};

// Classical fixed-step 4th-order integration; every state is re-validated.
std::vector<FlowState> flow(const FlowState& s0, double dtau, int steps, FlowOptions opt = {});

struct InvarianceOptions {
    CloudOptions cloud;                                  // for the drift clouds
    int coord_grid = 32;                                 // cross-check grid
    std::vector<std::pair<cplx, cplx>> kernel_at = {{-1.0, -1.0}}; // surgery detector
    int kernel_cutoff = -1;                              // -1: state cutoff
    std::vector<int> checkpoints;                        // defaults to {0, last}
};

struct InvarianceReport {
    double cloud_drift = 0.0;
    double willmore_drift = 0.0;
    double max_residual = 0.0;
    double coord_crosscheck = 0.0;
    std::vector<std::vector<int>> kernel_trace; // per checkpoint, per multiplier pair
    std::string cloud_diagnostics;

    std::string to_json() const;
};

InvarianceReport invariance_report(const std::vector<FlowState>& traj,
                                   const std::vector<cplx>& contour,
                                   InvarianceOptions opt = {});

// (x1,x2,x3)/(1-x4); pole at x4 = 1.
std::array<double, 3> stereographic_project(const std::array<double, 4>& x);

} // namespace floq

#endif

#ifndef FLOQ_FIXTURES_HPP
#define FLOQ_FIXTURES_HPP

#include "floq/dirac.hpp"

namespace floq {

// Clifford torus in the unit three-sphere: constant potential u = (1+i)/4 on
// the lattice (2*pi, 2*pi*i), spinors
//   Psi = 2^{-1/2} e^{-i(x+y)/2} (1,1),  Phi = (1/(2 sqrt 2)) e^{i(y-x)/2} (-1,1),
// exact zero modes of D and the adjoint form with multipliers (-1,-1).
struct CliffordS3Data {
    DiracPotential potential;
    QuasiPeriodicFunction Psi, Phi;
    cplx u;
};

CliffordS3Data clifford_s3(int cutoff = 16);

// Clifford torus in R^3, stereographic image of the spherical one:
// U(y) = sin y / (2 sqrt 2 (sin y - sqrt 2)), with the pole constants and the
// glued spectral-curve pairs of its Baker-Akhiezer function.
struct CliffordR3Data {
    DiracPotential potential;
    cplx u;
    std::array<cplx, 3> poles;                       // p1, p2, p3
    std::array<std::array<cplx, 2>, 2> glued_pairs;  // {(1+i)/4,(-1+i)/4}, {-(1+i)/4,(1-i)/4}
};

CliffordR3Data clifford_r3(int cutoff = 32);

double clifford_r3_value(double y);

// y-profiles of the rational Baker-Akhiezer ansatz, from the two decoupled
// 2x2 gluing systems solved per grid point.
struct BakerAkhiezerProfiles {
    int grid = 0;
    std::vector<cplx> q1, q2, t1, t2;
    double max_condition = 0.0;
};

BakerAkhiezerProfiles ba_profiles(const CliffordR3Data& data, int ygrid = 256);

// psi(lambda) = e^{k x} e^{i beta y} W(y) with k = lambda - |u|^2/lambda,
// beta = lambda + |u|^2/lambda.
struct BakerAkhiezerEval {
    cplx lambda, k, beta;
    std::vector<cplx> W1, W2;
    std::pair<cplx, cplx> prefactor_multipliers;
};

BakerAkhiezerEval baker_akhiezer_r3(const CliffordR3Data& data,
                                    const BakerAkhiezerProfiles& profiles, cplx lambda);

// sup-norm Dirac residual of the assembled Baker-Akhiezer spinor on the grid.
double ba_dirac_residual(const CliffordR3Data& data, const BakerAkhiezerEval& eval);

// Kernel counts of both Clifford potentials at multipliers (-1,-1): the
// spectral-curve surgery seen at fixed multipliers (4 branches vs 2 after
// gluing), with the singular-value margins.
struct DoublePointReport {
    int count_s3 = 0, count_r3 = 0;
    double margin_s3 = 0.0, margin_r3 = 0.0; // 5th resp. 3rd singular value
    std::vector<double> svals_s3, svals_r3;
};

DoublePointReport double_point_report(int cutoff = 24);

} // namespace floq

#endif

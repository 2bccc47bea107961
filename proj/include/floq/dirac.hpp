#ifndef FLOQ_DIRAC_HPP
#define FLOQ_DIRAC_HPP

#include <Eigen/Dense>
#include <string>

#include "floq/quasi.hpp"

namespace floq {

// Potential of the Weierstrass-representation Dirac operator
//   D = [[U, d],[-dbar, conj U]],  adjoint form swaps U <-> conj U.
struct DiracPotential {
    PeriodicField U;
    bool real_reduction = false;

    explicit DiracPotential(PeriodicField field);
    DiracPotential(PeriodicField field, bool real_flag);
};

// Dense matrix of D(mu,nu) acting on stacked periodic parts (psi1; psi2):
// multiplication blocks are convolution matrices, derivative blocks diagonal.
Eigen::MatrixXcd assemble_dirac(const DiracPotential& pot, const ExponentPair& e, bool adjoint);

// Application of D (or the adjoint form) to a spinor, exact within the output
// band (defaults to psi.cutoff() + U.cutoff()).
QuasiPeriodicFunction apply_dirac(const DiracPotential& pot, const QuasiPeriodicFunction& psi,
                                  bool adjoint = false, int cutoff_out = -1);

// Relative coefficient-space residual ||D psi|| / ||psi||.
double dirac_residual(const DiracPotential& pot, const QuasiPeriodicFunction& psi,
                      bool adjoint = false);
// Relative sup-norm residual on a P x P evaluation grid, prefactor included.
double dirac_residual_grid(const DiracPotential& pot, const QuasiPeriodicFunction& psi, int P,
                           bool adjoint = false);

struct KernelSpectrum {
    std::vector<double> smallest; // ascending, k values
    double sigma_max = 0.0;
};

// k smallest singular values of the truncated D at the given multipliers
// (representative exponents from the principal log branch). Finite-truncation
// proxy for the regularized-determinant dispersion relation.
KernelSpectrum kernel_singular_values(const DiracPotential& pot,
                                      std::pair<cplx, cplx> multipliers, int k,
                                      bool adjoint = false, int cutoff = -1);

// Numerical kernel dimension: count of singular values < rel_tol * sigma_max.
int kernel_dimension(const KernelSpectrum& ks, double rel_tol = 1e-8);

struct SliceOptions {
    bool adjoint = false;
    bool want_vectors = false;
    int cutoff = -1; // -1: potential's own cutoff
};

struct SliceEntry {
    cplx nu;
    double residual;
    int dom_m, dom_n; // dominant Fourier mode of the psi1 eigenvector
};

// mu-slice of the multiplier set: all nu with nontrivial kernel of D(mu,nu),
// computed as the spectrum of the Schur complement
//   T(mu) = -dbar - conj(U) (d+mu)^{-1} U   on psi1 coefficients.
struct SliceSpectrum {
    cplx mu;
    bool adjoint = false;
    int cutoff = 0;
    std::vector<SliceEntry> entries;              // sorted by (Re nu, Im nu)
    std::vector<Eigen::VectorXcd> vectors;        // psi1 coefficients, if requested
};

SliceSpectrum slice_spectrum(const DiracPotential& pot, cplx mu, SliceOptions opt = {});

struct FloquetOptions {
    bool adjoint = false;
    double residual_threshold = 1e-8;
    int grid = 64;
};

// Floquet eigenfunction for the index-th slice eigenvalue, sup-norm normalized
// on the evaluation grid with a deterministic phase.
QuasiPeriodicFunction floquet_function(const DiracPotential& pot, cplx mu, int index,
                                       FloquetOptions opt = {});

struct CloudOptions {
    int cutoff = -1;        // -1: potential's own cutoff
    int margin = 10;        // retained window max(|m|,|n|) <= cutoff - margin
    double delta_conv = 1e-6;
    bool adjoint = false;
    int threads = 0;        // 0: hardware concurrency
};

struct CloudRecord {
    cplx mu, kappa1, kappa2;
    double residual;
    cplx nu;
    int dom_m, dom_n;
};

struct CloudSample {
    cplx mu;
    bool ok = true;
    std::string error;
    std::vector<CloudRecord> records; // sorted by (|kappa2|, arg kappa2)
};

struct MultiplierCloud {
    Lattice lattice;
    std::vector<CloudSample> samples;
    bool has_nu = true; // false after CSV round-trip (schema stores kappas only)

    std::string to_csv() const;
    static MultiplierCloud from_csv(const std::string& text);
};

// Sampled multiplier set: union over contour samples of (mu, kappa1, kappa2).
// Retention: eigenpair converges under cutoff N -> N+2 within delta_conv AND
// its dominant mode lies in the interior window (keeps cardinalities of
// comparable clouds equal; truncation-polluted boundary branches never enter).
// Resonant samples are skipped and flagged.
MultiplierCloud multiplier_cloud(const DiracPotential& pot, const std::vector<cplx>& contour,
                                 CloudOptions opt = {});

struct CloudDistanceResult {
    double value = 0.0; // +inf on cardinality mismatch
    std::string diagnostics;
};

// Per-sample optimal bipartite matching of kappa2 multisets in log scale
// (branch tracked through the slice eigenvalues when available, principal
// branch otherwise), maximum over samples.
CloudDistanceResult cloud_distance(const MultiplierCloud& a, const MultiplierCloud& b);

// U' = U exp(conj a + conj(b) conj(z) - a - b z); admissible iff
// Im(b gamma_j) in pi Z, in which case the factor is exactly the lattice mode
// with d-symbol -b and the multipliers scale by exp(b gamma_j).
DiracPotential gauge_transform(const DiracPotential& pot, cplx a, cplx b);

} // namespace floq

#endif

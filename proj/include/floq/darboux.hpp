#ifndef FLOQ_DARBOUX_HPP
#define FLOQ_DARBOUX_HPP

#include "floq/dirac.hpp"

namespace floq {

// (p,q) form of the operator pair behind the Dirac correspondence
//   L psi = 0:  dbar psi1 = p psi2,  d psi2 = q psi1,
// with the adjoint system dbar phi1 = -q phi2, d phi2 = -p phi1 (the sign of
// the second dual equation makes d(omega) closed and matches the adjoint
// Dirac form). Dictionary: p = conj U, q = -U, spinors identified
// componentwise.
struct PQPotential {
    PeriodicField p, q;
    static PQPotential from_dirac(const DiracPotential& pot);
};

// Distinguished pair: PsiD a zero Floquet solution of D with multipliers
// khat, PhiD of the adjoint system with multipliers 1/khat.
struct DarbouxPair {
    QuasiPeriodicFunction PsiD, PhiD;
    std::pair<cplx, cplx> khat() const { return PsiD.multipliers(); }
};

struct PairOptions {
    double residual_tol = 1e-8;
    double reciprocity_tol = 1e-10;
};

// Validates residuals and multiplier reciprocity.
DarbouxPair make_pair_checked(const DiracPotential& pot, QuasiPeriodicFunction PsiD,
                              QuasiPeriodicFunction PhiD, PairOptions opt = {});

// Pair from slice eigenpairs of D (muPsi, indexPsi) and of the adjoint form
// (muPhi, indexPhi).
DarbouxPair build_pair(const DiracPotential& pot, cplx muPsi, int indexPsi, cplx muPhi,
                       int indexPhi, PairOptions opt = {});

enum class OmegaSide { Direct, Dual };

struct OmegaNormalization {
    enum Kind { Floquet, Basepoint } kind = Floquet;
    cplx c = 0.0; // omega(0) in basepoint mode

    static OmegaNormalization floquet() { return {Floquet, 0.0}; }
    static OmegaNormalization basepoint(cplx c0 = 0.0) { return {Basepoint, c0}; }
};

struct OmegaResult {
    QuasiPeriodicFunction omega;
    double dbar_defect; // consistency of the unsolved dbar-equation, relative
};

// Kernel omega with d(omega) = PhiD1 psi1 dz - PhiD2 psi2 dzbar (direct side;
// dual side uses phi against PsiD). Floquet normalization solves the
// exponent-shifted d-equation (unique under the Lemma-4 hypothesis); the
// dbar-equation is verified and its defect reported.
OmegaResult omega_kernel(const QuasiPeriodicFunction& psi, const DarbouxPair& pair,
                         OmegaSide side = OmegaSide::Direct,
                         OmegaNormalization norm = OmegaNormalization::floquet());

// I_j = integral of d(omega) along the straight segment 0 -> gamma_j, each
// mode in closed form (exact for truncated series).
std::pair<cplx, cplx> period_integrals(const QuasiPeriodicFunction& psi, const DarbouxPair& pair,
                                       OmegaSide side = OmegaSide::Direct);

// Melnikov-type variation generated by the pair:
//   delta p = -PsiD1 PhiD2, delta q = PsiD2 PhiD1 (periodic), delta U = -delta q,
//   delta psi = omega * PsiD carrying the exponents of psi.
struct Deformation {
    PeriodicField deltaP, deltaQ, deltaU;
    QuasiPeriodicFunction deltaPsi;
};

Deformation deform(const DarbouxPair& pair, const QuasiPeriodicFunction& psi,
                   const QuasiPeriodicFunction& omega);

struct DefectOptions {
    int cutoff = -1;
    int margin = 5;
    bool adjoint = false;
};

// Matched distance between the mu-slices of U + eps*deltaU and U; O(eps^2)
// for a Darboux variation, O(eps) for a generic direction.
double isospectral_defect(const DiracPotential& pot, const PeriodicField& deltaU, cplx mu,
                          double eps, DefectOptions opt = {});

} // namespace floq

#endif

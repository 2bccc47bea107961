#ifndef FLOQ_SPECTRAL1D_HPP
#define FLOQ_SPECTRAL1D_HPP

#include <Eigen/Dense>

#include "floq/dirac.hpp"

namespace floq {

// 1D periodic potential as a coefficient list, u(x) = sum c_n e^{2 pi i n x/T}.
struct Potential1D {
    double period = 2 * 3.14159265358979323846;
    std::vector<std::pair<int, cplx>> coeffs;

    cplx eval(double x) const;
    static Potential1D zero(double T);
    static Potential1D constant(double T, cplx c);
    static Potential1D single_mode(double T, int n, cplx c);
    // y-profile of an x-independent 2D potential on the square lattice
    static Potential1D from_field_y(const PeriodicField& f);
};

struct MonodromyMatrix {
    Eigen::Matrix2cd M;
    cplx parameter; // E or k
    double period;

    cplx trace() const { return M(0, 0) + M(1, 1); }
    cplx det() const { return M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0); }
};

struct MonodromyResult {
    MonodromyMatrix monodromy;
    cplx discriminant;          // tr M
    cplx kappa_plus, kappa_minus; // eigenvalues, |kappa_plus| >= |kappa_minus|
};

// Transfer of -psi'' + u psi = E psi over one period from identity data,
// classical 4th-order fixed-step integration. Wronskian drift beyond 1e-6
// signals too few steps.
MonodromyResult schrodinger_monodromy(const Potential1D& u, cplx E, int steps = 8192);

struct ResonantPoint {
    cplx energy;
    int sign; // +1: Delta = +2, -1: Delta = -2
    enum Class { Diagonalizable, Jordan } classification;
    double defect;      // max entry of |M -+ I|
    double trace_error; // |tr M -+ 2|
};

struct ResonantOptions {
    int scan_per_unit = 400;
    int steps = 8192;
    double accept_tol = 1e-8;  // |Delta -+ 2| at an accepted root
    double diag_tol = 1e-8;    // defect below which M counts as +-I
    double jordan_tol = 1e-3;  // defect above which the gluing is structural
};

// Roots of Delta(E) -+ 2 in [lo, hi] (secant scan with complex polish; double
// roots located through the stationarity of Delta). Diagonalizable roots are
// the resonant points proper; Jordan ones are glued pairs or open gap
// endpoints.
std::vector<ResonantPoint> resonant_points(const Potential1D& u, double lo, double hi, int sign,
                                           ResonantOptions opt = {});

// Monodromy of the NLS auxiliary system [[i d_y, -2 conj U],[-2U, -i d_y]]
// psi = -k psi over one period; eigenvalues are the y-multipliers.
MonodromyResult nls_monodromy(const Potential1D& U, cplx k, int steps = 8192);

struct CrosscheckOptions {
    int cutoff = -1;
    int margin = 8;
    int steps = 8192;
};

// For each retained eigenpair of the mu = k/2 slice of an x-independent 2D
// potential, the multiplier kappa2 = exp(2 pi i (mu - nu)) must be an
// eigenvalue of the 1D monodromy at the reduced wavenumber
// k_eff = mu + nu + i m (m = the pair's x-block); returns the largest
// principal-log mismatch.
double reduction_crosscheck(const DiracPotential& pot, cplx k, CrosscheckOptions opt = {});

// Reduced Darboux kernel of an x-independent problem:
//   omega(lambda, z) = e^{(k-k1)x}/(k-k1) * (PhiD1 psi1 - PhiD2 psi2)(y).
struct Pair1D {
    cplx k1;
    std::vector<cplx> PhiD1, PhiD2; // y-profiles on a uniform grid
};

struct Omega1DResult {
    cplx k1, k;
    std::vector<cplx> profile; // (PhiD1 psi1 - PhiD2 psi2)(y) / (k - k1)

    cplx value(double x, int yindex) const {
        return std::exp((k - k1) * x) * profile[size_t(yindex)];
    }
};

Omega1DResult omega_1d(const Pair1D& pair, cplx k, const std::vector<cplx>& psi1,
                       const std::vector<cplx>& psi2);

} // namespace floq

#endif

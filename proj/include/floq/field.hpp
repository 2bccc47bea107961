#ifndef FLOQ_FIELD_HPP
#define FLOQ_FIELD_HPP

#include <iosfwd>
#include <vector>

#include "floq/lattice.hpp"

namespace floq {

enum class Deriv { Holomorphic, Antiholomorphic };

// Doubly periodic function as a truncated Fourier series
//   f(x,y) = sum_{|m|,|n| <= N} c_{mn} exp(i < m*alpha1 + n*alpha2, (x,y) >).
// Coefficients are the primary representation; grids appear only for products
// and evaluation.
class PeriodicField {
  public:
    PeriodicField(Lattice lattice, int cutoff);

    static PeriodicField constant(const Lattice& lat, int cutoff, cplx value);
    static PeriodicField basis_mode(const Lattice& lat, int cutoff, int m, int n, cplx amp = 1.0);

    const Lattice& lattice() const { return lat_; }
    int cutoff() const { return N_; }
    int dim() const { return 2 * N_ + 1; }
    int size() const { return dim() * dim(); }

    cplx& at(int m, int n);
    cplx at(int m, int n) const;
    cplx get(int m, int n) const; // 0 outside the band
    const std::vector<cplx>& coeffs() const { return c_; }
    std::vector<cplx>& coeffs() { return c_; }

    cplx eval(cplx z) const;
    // P x P values at z = (a/P)*gamma1 + (b/P)*gamma2, row-major in (a,b).
    std::vector<cplx> eval_grid(int P) const;
    static PeriodicField from_grid(const Lattice& lat, int cutoff, const std::vector<cplx>& values,
                                   int P);

    PeriodicField conjugated() const; // coefficients conj(c_{-m,-n})
    PeriodicField shifted(int dm, int dn, bool grow = false) const;
    PeriodicField resized(int cutoff) const;

    PeriodicField& operator+=(const PeriodicField& o);
    PeriodicField& operator-=(const PeriodicField& o);
    PeriodicField& operator*=(cplx s);
    friend PeriodicField operator+(PeriodicField a, const PeriodicField& b) { return a += b; }
    friend PeriodicField operator-(PeriodicField a, const PeriodicField& b) { return a -= b; }
    friend PeriodicField operator*(cplx s, PeriodicField f) { return f *= s; }

    double norm() const;     // l2 of coefficients
    double max_abs() const;  // max |c_mn|
    bool is_real(double tol = 1e-12) const;
    bool y_only() const; // supported on m = 0 modes
    bool x_only() const; // supported on n = 0 modes

    void write_csv(std::ostream& os) const;
    static PeriodicField read_csv(std::istream& is);

  private:
    Lattice lat_;
    int N_;
    std::vector<cplx> c_;
    int idx(int m, int n) const { return (m + N_) * dim() + (n + N_); }
};

// Alias-free truncated product: sampled on a grid of >= 2*(Na+Nb)+1 points per
// axis, multiplied, transformed back and truncated to `cutoff_out` (defaults
// to exact bandwidth Na+Nb).
PeriodicField mul_fields(const PeriodicField& f, const PeriodicField& g, int cutoff_out = -1);

PeriodicField derivative(const PeriodicField& f, Deriv dir);

// Mode-wise inversion of (d + shift) resp. (dbar + shift); the resolvent
// behind the Floquet-normalized kernels. Throws resonance_error when some
// |symbol + shift| < 1e-10 * (1 + |shift|) and the right-hand side is stored
// there (or unconditionally when check_all_modes).
PeriodicField solve_shifted(Deriv dir, cplx shift, const PeriodicField& g,
                            bool check_all_modes = false);

} // namespace floq

#endif

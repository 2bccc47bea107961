#ifndef FLOQ_LATTICE_HPP
#define FLOQ_LATTICE_HPP

#include <array>
#include <complex>
#include <optional>

#include "floq/errors.hpp"

namespace floq {

using cplx = std::complex<double>;

// Period lattice spanned by two complex generators, positively oriented:
// Im(conj(gamma1)*gamma2) > 0. The dual basis alpha_j (real 2-vectors)
// satisfies <alpha_j, gamma_k> = 2*pi*delta_jk with gamma as (Re, Im).
class Lattice {
  public:
    Lattice(cplx gamma1, cplx gamma2);

    cplx gamma1() const { return g1_; }
    cplx gamma2() const { return g2_; }
    cplx gamma(int j) const { return j == 1 ? g1_ : g2_; }
    std::array<double, 2> alpha1() const { return a1_; }
    std::array<double, 2> alpha2() const { return a2_; }

    double cell_area() const;

    // Dual wave vector of mode (m,n): w = m*alpha1 + n*alpha2.
    std::array<double, 2> wave_vector(int m, int n) const;

    // Symbols of d/dz and d/dzbar on e_{mn} = exp(i<w,(x,y)>):
    //   d = (w_y + i w_x)/2,  dbar = (-w_y + i w_x)/2 = -conj(d).
    cplx d_symbol(int m, int n) const;
    cplx dbar_symbol(int m, int n) const;

    // Inverse of d_symbol on the mode lattice; nullopt when `d` is not the
    // symbol of an integer mode (tolerance in absolute symbol units).
    std::optional<std::array<int, 2>> mode_from_d_symbol(cplx d, double tol = 1e-9) const;

    // Point of the fundamental cell: z = s*gamma1 + t*gamma2.
    cplx point(double s, double t) const { return s * g1_ + t * g2_; }

    bool same_as(const Lattice& o, double tol = 1e-12) const;

  private:
    cplx g1_, g2_;
    std::array<double, 2> a1_, a2_;
};

} // namespace floq

#endif

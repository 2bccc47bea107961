#ifndef FLOQ_QUASI_HPP
#define FLOQ_QUASI_HPP

#include <optional>
#include <utility>

#include "floq/field.hpp"

namespace floq {

// Exponents of the factor exp(mu*z + nu*conj(z)).
struct ExponentPair {
    cplx mu{0.0};
    cplx nu{0.0};

    ExponentPair() = default;
    ExponentPair(cplx m, cplx n) : mu(m), nu(n) {}

    ExponentPair operator+(const ExponentPair& o) const { return {mu + o.mu, nu + o.nu}; }
    ExponentPair operator-(const ExponentPair& o) const { return {mu - o.mu, nu - o.nu}; }
    ExponentPair operator-() const { return {-mu, -nu}; }
    // exponents of the complex conjugate factor
    ExponentPair conj_pair() const { return {std::conj(nu), std::conj(mu)}; }
};

// kappa_j = exp(mu*gamma_j + nu*conj(gamma_j))
std::pair<cplx, cplx> multipliers_of(const ExponentPair& e, const Lattice& lat);

// Two exponent pairs induce equal multipliers iff their difference is the
// symbol pair of an integer mode; returns that mode when it is.
std::optional<std::array<int, 2>> mode_shift_between(const ExponentPair& from,
                                                     const ExponentPair& to, const Lattice& lat,
                                                     double tol = 1e-9);

// Representative exponents for given multipliers, principal log branch.
ExponentPair exponents_from_multipliers(cplx kappa1, cplx kappa2, const Lattice& lat);

// exp(mu*z + nu*conj z) times one (scalar) or two (spinor) periodic fields.
class QuasiPeriodicFunction {
  public:
    QuasiPeriodicFunction(ExponentPair e, PeriodicField scalar);
    QuasiPeriodicFunction(ExponentPair e, PeriodicField comp1, PeriodicField comp2);

    const ExponentPair& exponents() const { return exp_; }
    bool is_spinor() const { return comps_.size() == 2; }
    int components() const { return int(comps_.size()); }
    const PeriodicField& comp(int k) const { return comps_.at(k); }
    PeriodicField& comp(int k) { return comps_.at(k); }
    const Lattice& lattice() const { return comps_[0].lattice(); }
    int cutoff() const { return comps_[0].cutoff(); }

    std::pair<cplx, cplx> multipliers() const { return multipliers_of(exp_, lattice()); }

    cplx prefactor(cplx z) const; // exp(mu z + nu conj z)
    cplx eval(cplx z, int k = 0) const { return prefactor(z) * comps_.at(k).eval(z); }

    double norm() const;

    // Equivalent representation with the requested exponents (exact integer
    // mode shift of every component); throws invalid_input when the exponent
    // difference is not a lattice mode. With grow the band widens so no mode
    // is dropped.
    QuasiPeriodicFunction recentered(const ExponentPair& target, bool grow = false) const;

    void write_csv(std::ostream& os) const;
    static QuasiPeriodicFunction read_csv(std::istream& is);

  private:
    ExponentPair exp_;
    std::vector<PeriodicField> comps_;
};

// psi* = (conj psi2, -conj psi1) with exponents (conj nu, conj mu); maps zero
// modes of D to zero modes of D (and of the adjoint system likewise), with
// conjugated multipliers.
QuasiPeriodicFunction star_involution(const QuasiPeriodicFunction& psi);

// Componentwise product of a scalar quasi-periodic factor with a quasi-periodic
// function; exponents add.
QuasiPeriodicFunction qp_mul(const QuasiPeriodicFunction& scalar,
                             const QuasiPeriodicFunction& f, int cutoff_out = -1);

// Periodic-field times quasi-periodic function; exponents preserved.
QuasiPeriodicFunction qp_scale(const PeriodicField& a, const QuasiPeriodicFunction& f,
                               int cutoff_out = -1);

} // namespace floq

#endif

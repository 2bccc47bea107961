#include "floq/lattice.hpp"

#include <cmath>

namespace floq {

static constexpr double TWO_PI = 6.283185307179586476925286766559;

Lattice::Lattice(cplx gamma1, cplx gamma2) : g1_(gamma1), g2_(gamma2) {
    const double det = gamma1.real() * gamma2.imag() - gamma1.imag() * gamma2.real();
    const double scale = std::abs(gamma1) * std::abs(gamma2);
    if (scale == 0.0 || std::abs(det) < 1e-12 * scale)
        throw invalid_input("lattice: degenerate periods (collinear or zero)");
    if (det < 0.0)
        throw invalid_input("lattice: periods not positively oriented, Im(conj(g1)*g2) <= 0");
    // solve [[g1x, g1y],[g2x, g2y]] * alpha_j = 2*pi*e_j
    const double inv = 1.0 / det;
    a1_ = {TWO_PI * gamma2.imag() * inv, -TWO_PI * gamma2.real() * inv};
    a2_ = {-TWO_PI * gamma1.imag() * inv, TWO_PI * gamma1.real() * inv};
}

double Lattice::cell_area() const {
    return std::abs(g1_.real() * g2_.imag() - g1_.imag() * g2_.real());
}

std::array<double, 2> Lattice::wave_vector(int m, int n) const {
    return {m * a1_[0] + n * a2_[0], m * a1_[1] + n * a2_[1]};
}

cplx Lattice::d_symbol(int m, int n) const {
    auto w = wave_vector(m, n);
    return cplx(w[1], w[0]) / 2.0;
}

cplx Lattice::dbar_symbol(int m, int n) const {
    auto w = wave_vector(m, n);
    return cplx(-w[1], w[0]) / 2.0;
}

std::optional<std::array<int, 2>> Lattice::mode_from_d_symbol(cplx d, double tol) const {
    // d = (w_y + i w_x)/2 with w = m*alpha1 + n*alpha2
    const double wx = 2.0 * d.imag(), wy = 2.0 * d.real();
    const double det = a1_[0] * a2_[1] - a1_[1] * a2_[0];
    const double mf = (wx * a2_[1] - wy * a2_[0]) / det;
    const double nf = (wy * a1_[0] - wx * a1_[1]) / det;
    const int m = static_cast<int>(std::lround(mf));
    const int n = static_cast<int>(std::lround(nf));
    if (std::abs(d_symbol(m, n) - d) > tol) return std::nullopt;
    return std::array<int, 2>{m, n};
}

bool Lattice::same_as(const Lattice& o, double tol) const {
    return std::abs(g1_ - o.g1_) <= tol && std::abs(g2_ - o.g2_) <= tol;
}

} // namespace floq

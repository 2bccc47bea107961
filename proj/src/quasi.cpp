#include "floq/quasi.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include "floq/io.hpp"

namespace floq {

std::pair<cplx, cplx> multipliers_of(const ExponentPair& e, const Lattice& lat) {
    const cplx k1 = std::exp(e.mu * lat.gamma1() + e.nu * std::conj(lat.gamma1()));
    const cplx k2 = std::exp(e.mu * lat.gamma2() + e.nu * std::conj(lat.gamma2()));
    return {k1, k2};
}

std::optional<std::array<int, 2>> mode_shift_between(const ExponentPair& from,
                                                     const ExponentPair& to, const Lattice& lat,
                                                     double tol) {
    const ExponentPair d = to - from;
    auto mode = lat.mode_from_d_symbol(d.mu, tol);
    if (!mode) return std::nullopt;
    if (std::abs(lat.dbar_symbol((*mode)[0], (*mode)[1]) - d.nu) > tol) return std::nullopt;
    return mode;
}

ExponentPair exponents_from_multipliers(cplx kappa1, cplx kappa2, const Lattice& lat) {
    if (kappa1 == 0.0 || kappa2 == 0.0) throw invalid_input("multipliers must be nonzero");
    const cplx l1 = std::log(kappa1), l2 = std::log(kappa2);
    // mu*g + nu*conj(g) = log kappa for both generators
    const cplx g1 = lat.gamma1(), g2 = lat.gamma2();
    const cplx det = g1 * std::conj(g2) - std::conj(g1) * g2;
    const cplx mu = (l1 * std::conj(g2) - l2 * std::conj(g1)) / det;
    const cplx nu = (g1 * l2 - g2 * l1) / det;
    return {mu, nu};
}

QuasiPeriodicFunction::QuasiPeriodicFunction(ExponentPair e, PeriodicField scalar) : exp_(e) {
    comps_.push_back(std::move(scalar));
}

QuasiPeriodicFunction::QuasiPeriodicFunction(ExponentPair e, PeriodicField c1, PeriodicField c2)
    : exp_(e) {
    if (!c1.lattice().same_as(c2.lattice()) || c1.cutoff() != c2.cutoff())
        throw invalid_input("spinor components must share lattice and cutoff");
    comps_.push_back(std::move(c1));
    comps_.push_back(std::move(c2));
}

cplx QuasiPeriodicFunction::prefactor(cplx z) const {
    return std::exp(exp_.mu * z + exp_.nu * std::conj(z));
}

double QuasiPeriodicFunction::norm() const {
    double s = 0.0;
    for (const auto& c : comps_) {
        const double n = c.norm();
        s += n * n;
    }
    return std::sqrt(s);
}

QuasiPeriodicFunction QuasiPeriodicFunction::recentered(const ExponentPair& target,
                                                        bool grow) const {
    auto mode = mode_shift_between(target, exp_, lattice());
    if (!mode)
        throw invalid_input("recenter: exponent difference is not a lattice mode");
    std::vector<PeriodicField> out;
    for (const auto& c : comps_) out.push_back(c.shifted((*mode)[0], (*mode)[1], grow));
    if (out.size() == 1) return {target, std::move(out[0])};
    return {target, std::move(out[0]), std::move(out[1])};
}

void QuasiPeriodicFunction::write_csv(std::ostream& os) const {
    os << "#lattice," << io::fmt(lattice().gamma1().real()) << ','
       << io::fmt(lattice().gamma1().imag()) << ',' << io::fmt(lattice().gamma2().real()) << ','
       << io::fmt(lattice().gamma2().imag()) << '\n';
    os << "#cutoff," << cutoff() << '\n';
    os << "#exponents," << io::fmt(exp_.mu.real()) << ',' << io::fmt(exp_.mu.imag()) << ','
       << io::fmt(exp_.nu.real()) << ',' << io::fmt(exp_.nu.imag()) << '\n';
    os << "#components," << components() << '\n';
    for (int k = 0; k < components(); ++k) {
        os << "#component," << (k + 1) << '\n';
        const auto& f = comps_[k];
        const int N = f.cutoff();
        for (int m = -N; m <= N; ++m)
            for (int n = -N; n <= N; ++n) {
                const cplx c = f.at(m, n);
                os << m << ',' << n << ',' << io::fmt(c.real()) << ',' << io::fmt(c.imag())
                   << '\n';
            }
    }
}

QuasiPeriodicFunction QuasiPeriodicFunction::read_csv(std::istream& is) {
    std::string line;
    auto expect = [&](const char* prefix) {
        if (!std::getline(is, line) || line.rfind(prefix, 0) != 0)
            throw invalid_input(std::string("spinor csv: expected ") + prefix);
        return line.substr(std::string(prefix).size());
    };
    auto g = io::split_doubles(expect("#lattice,"));
    const int N = std::stoi(expect("#cutoff,"));
    auto e = io::split_doubles(expect("#exponents,"));
    const int ncomp = std::stoi(expect("#components,"));
    if (g.size() != 4 || e.size() != 4 || (ncomp != 1 && ncomp != 2))
        throw invalid_input("spinor csv: malformed header");
    Lattice lat(cplx(g[0], g[1]), cplx(g[2], g[3]));
    ExponentPair ep(cplx(e[0], e[1]), cplx(e[2], e[3]));
    std::vector<PeriodicField> comps;
    for (int k = 0; k < ncomp; ++k) {
        expect("#component,");
        PeriodicField f(lat, N);
        for (int cnt = 0; cnt < (2 * N + 1) * (2 * N + 1); ++cnt) {
            if (!std::getline(is, line)) throw invalid_input("spinor csv: truncated");
            std::istringstream ss(line);
            int m, n;
            char comma;
            double re, im;
            ss >> m >> comma >> n >> comma >> re >> comma >> im;
            if (!ss) throw invalid_input("spinor csv: bad mode line: " + line);
            f.at(m, n) = cplx(re, im);
        }
        comps.push_back(std::move(f));
    }
    if (ncomp == 1) return {ep, std::move(comps[0])};
    return {ep, std::move(comps[0]), std::move(comps[1])};
}

QuasiPeriodicFunction star_involution(const QuasiPeriodicFunction& psi) {
    if (!psi.is_spinor()) throw invalid_input("star involution needs a 2-component spinor");
    PeriodicField c1 = psi.comp(1).conjugated();
    PeriodicField c2 = psi.comp(0).conjugated();
    c2 *= -1.0;
    return {psi.exponents().conj_pair(), std::move(c1), std::move(c2)};
}

QuasiPeriodicFunction qp_mul(const QuasiPeriodicFunction& scalar, const QuasiPeriodicFunction& f,
                             int cutoff_out) {
    if (scalar.is_spinor()) throw invalid_input("qp_mul: first factor must be scalar");
    const ExponentPair e = scalar.exponents() + f.exponents();
    if (f.components() == 1)
        return {e, mul_fields(scalar.comp(0), f.comp(0), cutoff_out)};
    return {e, mul_fields(scalar.comp(0), f.comp(0), cutoff_out),
            mul_fields(scalar.comp(0), f.comp(1), cutoff_out)};
}

QuasiPeriodicFunction qp_scale(const PeriodicField& a, const QuasiPeriodicFunction& f,
                               int cutoff_out) {
    if (f.components() == 1) return {f.exponents(), mul_fields(a, f.comp(0), cutoff_out)};
    return {f.exponents(), mul_fields(a, f.comp(0), cutoff_out),
            mul_fields(a, f.comp(1), cutoff_out)};
}

} // namespace floq

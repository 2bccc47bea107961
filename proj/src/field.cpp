#include "floq/field.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "floq/fft.hpp"
#include "floq/io.hpp"

namespace floq {

PeriodicField::PeriodicField(Lattice lattice, int cutoff)
    : lat_(lattice), N_(cutoff), c_(size_t(2 * cutoff + 1) * (2 * cutoff + 1), cplx(0.0)) {
    if (cutoff < 1) throw invalid_input("field: cutoff must be >= 1");
}

PeriodicField PeriodicField::constant(const Lattice& lat, int cutoff, cplx value) {
    PeriodicField f(lat, cutoff);
    f.at(0, 0) = value;
    return f;
}

PeriodicField PeriodicField::basis_mode(const Lattice& lat, int cutoff, int m, int n, cplx amp) {
    PeriodicField f(lat, cutoff);
    f.at(m, n) = amp;
    return f;
}

cplx& PeriodicField::at(int m, int n) {
    if (std::abs(m) > N_ || std::abs(n) > N_) throw invalid_input("field: mode outside band");
    return c_[idx(m, n)];
}

cplx PeriodicField::at(int m, int n) const {
    if (std::abs(m) > N_ || std::abs(n) > N_) throw invalid_input("field: mode outside band");
    return c_[idx(m, n)];
}

cplx PeriodicField::get(int m, int n) const {
    if (std::abs(m) > N_ || std::abs(n) > N_) return 0.0;
    return c_[idx(m, n)];
}

cplx PeriodicField::eval(cplx z) const {
    const double x = z.real(), y = z.imag();
    const auto a1 = lat_.alpha1(), a2 = lat_.alpha2();
    cplx sum = 0.0;
    for (int m = -N_; m <= N_; ++m) {
        for (int n = -N_; n <= N_; ++n) {
            const cplx c = c_[idx(m, n)];
            if (c == 0.0) continue;
            const double phase = (m * a1[0] + n * a2[0]) * x + (m * a1[1] + n * a2[1]) * y;
            sum += c * std::polar(1.0, phase);
        }
    }
    return sum;
}

std::vector<cplx> PeriodicField::eval_grid(int P) const {
    if (P < 1) throw invalid_input("field: grid size must be >= 1");
    std::vector<cplx> buf(size_t(P) * P, cplx(0.0));
    for (int m = -N_; m <= N_; ++m) {
        for (int n = -N_; n <= N_; ++n) {
            const cplx c = c_[idx(m, n)];
            if (c == 0.0) continue;
            const int a = ((m % P) + P) % P, b = ((n % P) + P) % P;
            buf[size_t(a) * P + b] += c;
        }
    }
    fft::backward2d(buf, P);
    return buf;
}

PeriodicField PeriodicField::from_grid(const Lattice& lat, int cutoff,
                                       const std::vector<cplx>& values, int P) {
    if (values.size() != size_t(P) * P) throw invalid_input("from_grid: size mismatch");
    if (P < 2 * cutoff + 1) throw invalid_input("from_grid: grid too small for cutoff");
    std::vector<cplx> buf = values;
    fft::forward2d(buf, P);
    PeriodicField f(lat, cutoff);
    for (int m = -cutoff; m <= cutoff; ++m) {
        for (int n = -cutoff; n <= cutoff; ++n) {
            const int a = ((m % P) + P) % P, b = ((n % P) + P) % P;
            f.at(m, n) = buf[size_t(a) * P + b];
        }
    }
    return f;
}

PeriodicField PeriodicField::conjugated() const {
    PeriodicField out(lat_, N_);
    for (int m = -N_; m <= N_; ++m)
        for (int n = -N_; n <= N_; ++n) out.at(m, n) = std::conj(at(-m, -n));
    return out;
}

PeriodicField PeriodicField::shifted(int dm, int dn, bool grow) const {
    const int Nout = grow ? N_ + std::max(std::abs(dm), std::abs(dn)) : N_;
    PeriodicField out(lat_, Nout);
    for (int m = -N_; m <= N_; ++m) {
        for (int n = -N_; n <= N_; ++n) {
            const int sm = m + dm, sn = n + dn;
            if (std::abs(sm) <= Nout && std::abs(sn) <= Nout) out.at(sm, sn) = at(m, n);
        }
    }
    return out;
}

PeriodicField PeriodicField::resized(int cutoff) const {
    PeriodicField out(lat_, cutoff);
    const int K = std::min(cutoff, N_);
    for (int m = -K; m <= K; ++m)
        for (int n = -K; n <= K; ++n) out.at(m, n) = at(m, n);
    return out;
}

PeriodicField& PeriodicField::operator+=(const PeriodicField& o) {
    if (!lat_.same_as(o.lat_) || N_ != o.N_) throw invalid_input("field +=: layout mismatch");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

PeriodicField& PeriodicField::operator-=(const PeriodicField& o) {
    if (!lat_.same_as(o.lat_) || N_ != o.N_) throw invalid_input("field -=: layout mismatch");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

PeriodicField& PeriodicField::operator*=(cplx s) {
    for (auto& v : c_) v *= s;
    return *this;
}

double PeriodicField::norm() const {
    double s = 0.0;
    for (const auto& v : c_) s += std::norm(v);
    return std::sqrt(s);
}

double PeriodicField::max_abs() const {
    double s = 0.0;
    for (const auto& v : c_) s = std::max(s, std::abs(v));
    return s;
}

bool PeriodicField::is_real(double tol) const {
    PeriodicField d = *this - conjugated();
    return d.norm() <= tol * std::max(1e-300, norm());
}

bool PeriodicField::y_only() const {
    for (int m = -N_; m <= N_; ++m) {
        if (m == 0) continue;
        for (int n = -N_; n <= N_; ++n)
            if (c_[idx(m, n)] != 0.0) return false;
    }
    return true;
}

bool PeriodicField::x_only() const {
    for (int m = -N_; m <= N_; ++m)
        for (int n = -N_; n <= N_; ++n)
            if (n != 0 && c_[idx(m, n)] != 0.0) return false;
    return true;
}

void PeriodicField::write_csv(std::ostream& os) const {
    os << "#lattice," << io::fmt(lat_.gamma1().real()) << ',' << io::fmt(lat_.gamma1().imag())
       << ',' << io::fmt(lat_.gamma2().real()) << ',' << io::fmt(lat_.gamma2().imag()) << '\n';
    os << "#cutoff," << N_ << '\n';
    for (int m = -N_; m <= N_; ++m)
        for (int n = -N_; n <= N_; ++n) {
            const cplx c = at(m, n);
            os << m << ',' << n << ',' << io::fmt(c.real()) << ',' << io::fmt(c.imag()) << '\n';
        }
}

PeriodicField PeriodicField::read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("#lattice,", 0) != 0)
        throw invalid_input("field csv: missing #lattice header");
    auto g = io::split_doubles(line.substr(9));
    if (g.size() != 4) throw invalid_input("field csv: bad #lattice header");
    if (!std::getline(is, line) || line.rfind("#cutoff,", 0) != 0)
        throw invalid_input("field csv: missing #cutoff header");
    const int N = std::stoi(line.substr(8));
    PeriodicField f(Lattice(cplx(g[0], g[1]), cplx(g[2], g[3])), N);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') break; // caller handles sectioned files
        std::istringstream ss(line);
        int m, n;
        char comma;
        double re, im;
        ss >> m >> comma >> n >> comma >> re >> comma >> im;
        if (!ss) throw invalid_input("field csv: bad mode line: " + line);
        f.at(m, n) = cplx(re, im);
    }
    return f;
}

PeriodicField mul_fields(const PeriodicField& f, const PeriodicField& g, int cutoff_out) {
    if (!f.lattice().same_as(g.lattice())) throw invalid_input("mul_fields: lattice mismatch");
    const int Nexact = f.cutoff() + g.cutoff();
    const int Nout = cutoff_out < 0 ? Nexact : cutoff_out;
    const int P = std::max(2 * Nexact + 2, 2 * Nout + 2);
    auto a = f.eval_grid(P);
    const auto b = g.eval_grid(P);
    for (size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
    return PeriodicField::from_grid(f.lattice(), Nout, a, P);
}

PeriodicField derivative(const PeriodicField& f, Deriv dir) {
    PeriodicField out(f.lattice(), f.cutoff());
    const int N = f.cutoff();
    for (int m = -N; m <= N; ++m)
        for (int n = -N; n <= N; ++n) {
            const cplx s = dir == Deriv::Holomorphic ? f.lattice().d_symbol(m, n)
                                                     : f.lattice().dbar_symbol(m, n);
            out.at(m, n) = s * f.at(m, n);
        }
    return out;
}

PeriodicField solve_shifted(Deriv dir, cplx shift, const PeriodicField& g, bool check_all_modes) {
    const int N = g.cutoff();
    const double tol = 1e-10 * (1.0 + std::abs(shift));
    PeriodicField out(g.lattice(), N);
    for (int m = -N; m <= N; ++m)
        for (int n = -N; n <= N; ++n) {
            const cplx s = (dir == Deriv::Holomorphic ? g.lattice().d_symbol(m, n)
                                                      : g.lattice().dbar_symbol(m, n)) +
                           shift;
            if (std::abs(s) < tol) {
                if (check_all_modes || g.at(m, n) != 0.0)
                    throw resonance_error("solve_shifted: resonant mode (" + std::to_string(m) +
                                              "," + std::to_string(n) + ")",
                                          m, n);
                out.at(m, n) = 0.0;
            } else {
                out.at(m, n) = g.at(m, n) / s;
            }
        }
    return out;
}

} // namespace floq

#include "floq/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "floq/io.hpp"
#include "floq/linalg.hpp"
#include "floq/util.hpp"

namespace floq {

namespace {

constexpr double PI = 3.14159265358979323846;

int flat_index(int m, int n, int N) { return (m + N) * (2 * N + 1) + (n + N); }

Eigen::MatrixXcd conv_2d(const PeriodicField& f, int N) {
    const int dim = (2 * N + 1) * (2 * N + 1);
    Eigen::MatrixXcd C(dim, dim);
    for (int m = -N; m <= N; ++m)
        for (int n = -N; n <= N; ++n)
            for (int mp = -N; mp <= N; ++mp)
                for (int np = -N; np <= N; ++np)
                    C(flat_index(m, n, N), flat_index(mp, np, N)) = f.get(m - mp, n - np);
    return C;
}

// 1D convolution matrix along the running axis of a block; fixed = the other
// index of the potential's support (0 for the separable fixtures).
Eigen::MatrixXcd conv_1d(const PeriodicField& f, int N, bool y_blocks) {
    const int dim = 2 * N + 1;
    Eigen::MatrixXcd C(dim, dim);
    for (int i = -N; i <= N; ++i)
        for (int j = -N; j <= N; ++j)
            C(i + N, j + N) = y_blocks ? f.get(0, i - j) : f.get(i - j, 0);
    return C;
}

void check_nonresonant(const Lattice& lat, int N, cplx mu) {
    const double tol = 1e-10 * (1.0 + std::abs(mu));
    for (int m = -N; m <= N; ++m)
        for (int n = -N; n <= N; ++n)
            if (std::abs(lat.d_symbol(m, n) + mu) < tol)
                throw resonance_error("slice: resonant mode (" + std::to_string(m) + "," +
                                          std::to_string(n) + ") at mu",
                                      m, n);
}

struct BlockResult {
    std::vector<cplx> nus;
    std::vector<double> residuals;
    std::vector<std::array<int, 2>> modes;
    std::vector<Eigen::VectorXcd> vectors; // full-length, only when requested
};

// One Schur-complement eigenproblem, either a separable 1D block or the full
// 2D matrix. `modes` enumerates the psi1 basis modes of this block.
void solve_schur_block(const Eigen::MatrixXcd& CA, const Eigen::MatrixXcd& CB,
                       const std::vector<std::array<int, 2>>& modes, const Lattice& lat, cplx mu,
                       bool want_vectors, int full_N, BlockResult& out) {
    const int dim = int(modes.size());
    Eigen::VectorXcd d(dim), db(dim);
    for (int i = 0; i < dim; ++i) {
        d(i) = lat.d_symbol(modes[i][0], modes[i][1]) + mu;
        db(i) = lat.dbar_symbol(modes[i][0], modes[i][1]);
    }
    Eigen::MatrixXcd T = -CB * d.cwiseInverse().asDiagonal() * CA;
    T -= db.asDiagonal();
    Eigen::MatrixXcd T0 = T;
    Eigen::VectorXcd w;
    Eigen::MatrixXcd V;
    linalg::eig(T, w, &V);
    for (int k = 0; k < dim; ++k) {
        const Eigen::VectorXcd v = V.col(k);
        int dom = 0;
        v.cwiseAbs().maxCoeff(&dom);
        const double res = (T0 * v - w(k) * v).norm() / v.norm();
        out.nus.push_back(w(k));
        out.residuals.push_back(res);
        out.modes.push_back(modes[dom]);
        if (want_vectors) {
            Eigen::VectorXcd full = Eigen::VectorXcd::Zero((2 * full_N + 1) * (2 * full_N + 1));
            for (int i = 0; i < dim; ++i) full(flat_index(modes[i][0], modes[i][1], full_N)) = v(i);
            out.vectors.push_back(std::move(full));
        }
    }
}

} // namespace

DiracPotential::DiracPotential(PeriodicField field)
    : U(std::move(field)), real_reduction(U.is_real(1e-12)) {}

DiracPotential::DiracPotential(PeriodicField field, bool real_flag)
    : U(std::move(field)), real_reduction(real_flag) {
    if (real_reduction && !U.is_real(1e-12))
        throw invalid_input("DiracPotential: real_reduction set but U != conj U");
}

Eigen::MatrixXcd assemble_dirac(const DiracPotential& pot, const ExponentPair& e, bool adjoint) {
    const PeriodicField A = adjoint ? pot.U.conjugated() : pot.U;
    const PeriodicField B = A.conjugated();
    const int N = pot.U.cutoff();
    const int M = (2 * N + 1) * (2 * N + 1);
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(2 * M, 2 * M);
    D.topLeftCorner(M, M) = conv_2d(A, N);
    D.bottomRightCorner(M, M) = conv_2d(B, N);
    const Lattice& lat = pot.U.lattice();
    for (int m = -N; m <= N; ++m)
        for (int n = -N; n <= N; ++n) {
            const int i = flat_index(m, n, N);
            D(i, M + i) = lat.d_symbol(m, n) + e.mu;
            D(M + i, i) = -(lat.dbar_symbol(m, n) + e.nu);
        }
    return D;
}

QuasiPeriodicFunction apply_dirac(const DiracPotential& pot, const QuasiPeriodicFunction& psi,
                                  bool adjoint, int cutoff_out) {
    if (!psi.is_spinor()) throw invalid_input("apply_dirac: spinor expected");
    if (!psi.lattice().same_as(pot.U.lattice()))
        throw invalid_input("apply_dirac: lattice mismatch");
    const PeriodicField A = adjoint ? pot.U.conjugated() : pot.U;
    const PeriodicField B = A.conjugated();
    const int Nout = cutoff_out > 0 ? cutoff_out : psi.cutoff() + pot.U.cutoff();
    const cplx mu = psi.exponents().mu, nu = psi.exponents().nu;
    const PeriodicField p1 = psi.comp(0).resized(Nout), p2 = psi.comp(1).resized(Nout);
    PeriodicField r1 = mul_fields(A, psi.comp(0), Nout);
    r1 += derivative(p2, Deriv::Holomorphic);
    r1 += mu * p2;
    PeriodicField r2 = mul_fields(B, psi.comp(1), Nout);
    r2 -= derivative(p1, Deriv::Antiholomorphic);
    r2 -= nu * p1;
    return {psi.exponents(), std::move(r1), std::move(r2)};
}

double dirac_residual(const DiracPotential& pot, const QuasiPeriodicFunction& psi, bool adjoint) {
    const double n = psi.norm();
    if (n == 0.0) return 0.0;
    return apply_dirac(pot, psi, adjoint).norm() / n;
}

double dirac_residual_grid(const DiracPotential& pot, const QuasiPeriodicFunction& psi, int P,
                           bool adjoint) {
    const auto r = apply_dirac(pot, psi, adjoint);
    const auto r1 = r.comp(0).eval_grid(P), r2 = r.comp(1).eval_grid(P);
    const auto p1 = psi.comp(0).eval_grid(P), p2 = psi.comp(1).eval_grid(P);
    double rmax = 0.0, pmax = 0.0;
    for (int a = 0; a < P; ++a)
        for (int b = 0; b < P; ++b) {
            const cplx z = psi.lattice().point(double(a) / P, double(b) / P);
            const double pre = std::abs(psi.prefactor(z));
            const size_t i = size_t(a) * P + b;
            rmax = std::max({rmax, pre * std::abs(r1[i]), pre * std::abs(r2[i])});
            pmax = std::max({pmax, pre * std::abs(p1[i]), pre * std::abs(p2[i])});
        }
    return pmax == 0.0 ? 0.0 : rmax / pmax;
}

KernelSpectrum kernel_singular_values(const DiracPotential& pot,
                                      std::pair<cplx, cplx> multipliers, int k, bool adjoint,
                                      int cutoff) {
    const Lattice& lat = pot.U.lattice();
    const ExponentPair e = exponents_from_multipliers(multipliers.first, multipliers.second, lat);
    const int N = cutoff > 0 ? cutoff : pot.U.cutoff();
    const PeriodicField Ur = pot.U.resized(N);
    const PeriodicField A = adjoint ? Ur.conjugated() : Ur;
    const PeriodicField B = A.conjugated();

    std::vector<double> all;
    const bool yb = A.y_only(), xb = !yb && A.x_only();
    if (yb || xb) {
        const int dim = 2 * N + 1;
        const Eigen::MatrixXcd CA = conv_1d(A, N, yb), CB = conv_1d(B, N, yb);
        for (int blk = -N; blk <= N; ++blk) {
            Eigen::MatrixXcd Dm = Eigen::MatrixXcd::Zero(2 * dim, 2 * dim);
            Dm.topLeftCorner(dim, dim) = CA;
            Dm.bottomRightCorner(dim, dim) = CB;
            for (int i = -N; i <= N; ++i) {
                const int m = yb ? blk : i, n = yb ? i : blk;
                Dm(i + N, dim + i + N) = lat.d_symbol(m, n) + e.mu;
                Dm(dim + i + N, i + N) = -(lat.dbar_symbol(m, n) + e.nu);
            }
            const Eigen::VectorXd s = linalg::singular_values(Dm);
            all.insert(all.end(), s.data(), s.data() + s.size());
        }
    } else {
        DiracPotential tmp(Ur, pot.real_reduction);
        Eigen::MatrixXcd D = assemble_dirac(tmp, e, adjoint);
        const Eigen::VectorXd s = linalg::singular_values(D);
        all.insert(all.end(), s.data(), s.data() + s.size());
    }
    std::sort(all.begin(), all.end());
    KernelSpectrum out;
    out.sigma_max = all.empty() ? 0.0 : all.back();
    const int kk = std::min<int>(k, int(all.size()));
    out.smallest.assign(all.begin(), all.begin() + kk);
    return out;
}

int kernel_dimension(const KernelSpectrum& ks, double rel_tol) {
    int c = 0;
    for (double s : ks.smallest)
        if (s < rel_tol * ks.sigma_max) ++c;
    return c;
}

SliceSpectrum slice_spectrum(const DiracPotential& pot, cplx mu, SliceOptions opt) {
    const Lattice& lat = pot.U.lattice();
    const int N = opt.cutoff > 0 ? opt.cutoff : pot.U.cutoff();
    check_nonresonant(lat, N, mu);
    const PeriodicField Ur = pot.U.resized(N);
    const PeriodicField A = opt.adjoint ? Ur.conjugated() : Ur;
    const PeriodicField B = A.conjugated();

    BlockResult acc;
    const bool yb = A.y_only(), xb = !yb && A.x_only();
    if (yb || xb) {
        const Eigen::MatrixXcd CA = conv_1d(A, N, yb), CB = conv_1d(B, N, yb);
        for (int blk = -N; blk <= N; ++blk) {
            std::vector<std::array<int, 2>> modes;
            modes.reserve(2 * N + 1);
            for (int i = -N; i <= N; ++i)
                modes.push_back(yb ? std::array<int, 2>{blk, i} : std::array<int, 2>{i, blk});
            solve_schur_block(CA, CB, modes, lat, mu, opt.want_vectors, N, acc);
        }
    } else {
        std::vector<std::array<int, 2>> modes;
        modes.reserve((2 * N + 1) * (2 * N + 1));
        for (int m = -N; m <= N; ++m)
            for (int n = -N; n <= N; ++n) modes.push_back({m, n});
        solve_schur_block(conv_2d(A, N), conv_2d(B, N), modes, lat, mu, opt.want_vectors, N, acc);
    }

    std::vector<int> order(acc.nus.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (acc.nus[a].real() != acc.nus[b].real()) return acc.nus[a].real() < acc.nus[b].real();
        return acc.nus[a].imag() < acc.nus[b].imag();
    });

    SliceSpectrum out;
    out.mu = mu;
    out.adjoint = opt.adjoint;
    out.cutoff = N;
    out.entries.reserve(order.size());
    for (int i : order)
        out.entries.push_back({acc.nus[i], acc.residuals[i], acc.modes[i][0], acc.modes[i][1]});
    if (opt.want_vectors) {
        out.vectors.reserve(order.size());
        for (int i : order) out.vectors.push_back(std::move(acc.vectors[i]));
    }
    return out;
}

QuasiPeriodicFunction floquet_function(const DiracPotential& pot, cplx mu, int index,
                                       FloquetOptions opt) {
    SliceSpectrum s = slice_spectrum(pot, mu, {opt.adjoint, true, -1});
    if (index < 0 || index >= int(s.entries.size()))
        throw invalid_input("floquet_function: index outside slice");
    const int N = s.cutoff;
    const cplx nu = s.entries[index].nu;
    PeriodicField psi1(pot.U.lattice(), N);
    for (int m = -N; m <= N; ++m)
        for (int n = -N; n <= N; ++n) psi1.at(m, n) = s.vectors[index](flat_index(m, n, N));
    const PeriodicField A = opt.adjoint ? pot.U.conjugated() : pot.U;
    PeriodicField rhs = mul_fields(A, psi1, N);
    rhs *= -1.0;
    PeriodicField psi2 = solve_shifted(Deriv::Holomorphic, mu, rhs);
    QuasiPeriodicFunction psi({mu, nu}, std::move(psi1), std::move(psi2));

    // deterministic normalization: sup-norm 1 on the grid, largest coefficient
    // rotated to the positive real axis
    const int P = opt.grid;
    double sup = 0.0;
    for (int k = 0; k < 2; ++k) {
        const auto vals = psi.comp(k).eval_grid(P);
        for (int a = 0; a < P; ++a)
            for (int b = 0; b < P; ++b) {
                const cplx z = pot.U.lattice().point(double(a) / P, double(b) / P);
                sup = std::max(sup, std::abs(psi.prefactor(z) * vals[size_t(a) * P + b]));
            }
    }
    if (sup == 0.0) throw spurious_mode_error("floquet_function: zero eigenvector");
    cplx cmax = 0.0;
    for (int k = 0; k < 2; ++k)
        for (const auto& c : psi.comp(k).coeffs())
            if (std::abs(c) > std::abs(cmax)) cmax = c;
    const cplx scale = (std::abs(cmax) / cmax) / sup;
    psi.comp(0) *= scale;
    psi.comp(1) *= scale;

    const double res = dirac_residual(pot, psi, opt.adjoint);
    if (res > opt.residual_threshold)
        throw spurious_mode_error("floquet_function: residual " + std::to_string(res) +
                                  " above threshold");
    return psi;
}

MultiplierCloud multiplier_cloud(const DiracPotential& pot, const std::vector<cplx>& contour,
                                 CloudOptions opt) {
    const int N = opt.cutoff > 0 ? opt.cutoff : pot.U.cutoff();
    if (opt.margin < 0 || opt.margin >= N)
        throw invalid_input("multiplier_cloud: margin must lie in [0, cutoff)");
    const Lattice& lat = pot.U.lattice();
    const DiracPotential potN(pot.U.resized(N), pot.real_reduction);
    const DiracPotential potN2(pot.U.resized(N + 2), pot.real_reduction);

    MultiplierCloud cloud{lat, std::vector<CloudSample>(contour.size()), true};
    parallel_for(int(contour.size()), opt.threads, [&](int si) {
        CloudSample& sample = cloud.samples[si];
        sample.mu = contour[si];
        try {
            const SliceSpectrum s1 = slice_spectrum(potN, sample.mu, {opt.adjoint, false, -1});
            const SliceSpectrum s2 = slice_spectrum(potN2, sample.mu, {opt.adjoint, false, -1});
            // s2 entries are sorted by real part: movement check by local scan
            std::vector<double> re2(s2.entries.size());
            for (size_t i = 0; i < s2.entries.size(); ++i) re2[i] = s2.entries[i].nu.real();
            for (const auto& e : s1.entries) {
                if (std::max(std::abs(e.dom_m), std::abs(e.dom_n)) > N - opt.margin) continue;
                const auto lo = std::lower_bound(re2.begin(), re2.end(),
                                                 e.nu.real() - opt.delta_conv) -
                                re2.begin();
                bool converged = false;
                for (size_t j = lo; j < s2.entries.size(); ++j) {
                    if (s2.entries[j].nu.real() > e.nu.real() + opt.delta_conv) break;
                    if (std::abs(s2.entries[j].nu - e.nu) < opt.delta_conv) {
                        converged = true;
                        break;
                    }
                }
                if (!converged) continue;
                const auto [k1, k2] = multipliers_of({sample.mu, e.nu}, lat);
                sample.records.push_back(
                    CloudRecord{sample.mu, k1, k2, e.residual, e.nu, e.dom_m, e.dom_n});
            }
            std::sort(sample.records.begin(), sample.records.end(),
                      [](const CloudRecord& a, const CloudRecord& b) {
                          const double ma = std::abs(a.kappa2), mb = std::abs(b.kappa2);
                          if (ma != mb) return ma < mb;
                          return std::arg(a.kappa2) < std::arg(b.kappa2);
                      });
        } catch (const numerical_error& err) {
            sample.ok = false;
            sample.error = err.what();
            sample.records.clear();
        }
    });
    return cloud;
}

std::string MultiplierCloud::to_csv() const {
    std::ostringstream os;
    os << "mu_re,mu_im,kappa1_re,kappa1_im,kappa2_re,kappa2_im,residual\n";
    for (const auto& s : samples) {
        if (!s.ok) continue;
        for (const auto& r : s.records)
            os << io::fmt(r.mu.real()) << ',' << io::fmt(r.mu.imag()) << ','
               << io::fmt(r.kappa1.real()) << ',' << io::fmt(r.kappa1.imag()) << ','
               << io::fmt(r.kappa2.real()) << ',' << io::fmt(r.kappa2.imag()) << ','
               << io::fmt(r.residual) << '\n';
    }
    return os.str();
}

MultiplierCloud MultiplierCloud::from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line.rfind("mu_re,", 0) != 0)
        throw invalid_input("cloud csv: missing header");
    MultiplierCloud cloud{Lattice(2 * PI, cplx(0, 2 * PI)), {}, false};
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto v = io::split_doubles(line);
        if (v.size() != 7) throw invalid_input("cloud csv: bad row: " + line);
        const cplx mu(v[0], v[1]);
        if (cloud.samples.empty() || std::abs(cloud.samples.back().mu - mu) > 1e-15)
            cloud.samples.push_back({mu, true, "", {}});
        cloud.samples.back().records.push_back(
            {mu, cplx(v[2], v[3]), cplx(v[4], v[5]), v[6], 0.0, 0, 0});
    }
    return cloud;
}

namespace {

double wrap_angle(double a) {
    while (a > PI) a -= 2 * PI;
    while (a <= -PI) a += 2 * PI;
    return a;
}

double log_metric(cplx k2a, cplx k2b) {
    const double dr = std::log(std::abs(k2a)) - std::log(std::abs(k2b));
    const double da = wrap_angle(std::arg(k2a) - std::arg(k2b));
    return std::sqrt(dr * dr + da * da);
}

} // namespace

CloudDistanceResult cloud_distance(const MultiplierCloud& a, const MultiplierCloud& b) {
    CloudDistanceResult out;
    if (a.samples.size() != b.samples.size())
        throw invalid_input("cloud_distance: different sample counts");
    const double g2 = std::abs(a.lattice.gamma2());
    const bool use_nu = a.has_nu && b.has_nu;
    for (size_t si = 0; si < a.samples.size(); ++si) {
        const auto& sa = a.samples[si];
        const auto& sb = b.samples[si];
        if (std::abs(sa.mu - sb.mu) > 1e-9)
            throw invalid_input("cloud_distance: contours differ at sample " + std::to_string(si));
        if (!sa.ok && !sb.ok) continue;
        if (sa.ok != sb.ok) {
            out.value = std::numeric_limits<double>::infinity();
            out.diagnostics += "sample " + std::to_string(si) + ": only one side resonant\n";
            continue;
        }
        const int n = int(sa.records.size());
        if (n != int(sb.records.size())) {
            out.value = std::numeric_limits<double>::infinity();
            out.diagnostics += "sample " + std::to_string(si) + ": cardinality " +
                               std::to_string(n) + " vs " + std::to_string(sb.records.size()) +
                               "\n";
            continue;
        }
        if (n == 0) continue;
        Eigen::MatrixXd cost(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                cost(i, j) = use_nu
                                 ? g2 * std::abs(sa.records[i].nu - sb.records[j].nu)
                                 : log_metric(sa.records[i].kappa2, sb.records[j].kappa2);
        const auto match = linalg::assignment(cost);
        for (int i = 0; i < n; ++i) out.value = std::max(out.value, cost(i, match[i]));
    }
    return out;
}

DiracPotential gauge_transform(const DiracPotential& pot, cplx a, cplx b) {
    const Lattice& lat = pot.U.lattice();
    for (int j = 1; j <= 2; ++j) {
        const double im = (b * lat.gamma(j)).imag();
        if (std::abs(im - PI * std::round(im / PI)) > 1e-10)
            throw invalid_input("gauge_transform: Im(b*gamma_" + std::to_string(j) +
                                ") not in pi*Z");
    }
    const auto mode = lat.mode_from_d_symbol(-b);
    if (!mode) throw invalid_input("gauge_transform: b does not match a lattice mode");
    const cplx phase = std::exp(std::conj(a) - a);
    PeriodicField shifted = pot.U.shifted((*mode)[0], (*mode)[1], /*grow=*/true);
    shifted *= phase;
    return DiracPotential(std::move(shifted));
}

} // namespace floq

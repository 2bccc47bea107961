#include "floq/darboux.hpp"

#include <cmath>

#include "floq/linalg.hpp"

namespace floq {

namespace {

// (exp(c) - 1)/c, stable near c = 0
cplx expm1_over(cplx c) {
    if (std::abs(c) < 1e-5)
        return 1.0 + c / 2.0 + c * c / 6.0 + c * c * c / 24.0;
    return (std::exp(c) - 1.0) / c;
}

// Integrand components of d(omega) = gz dz + gzb dzbar as one quasi-periodic
// pair sharing the exponents.
struct OmegaIntegrand {
    ExponentPair exponents;
    PeriodicField gz, gzb;
};

OmegaIntegrand integrand(const QuasiPeriodicFunction& psi, const DarbouxPair& pair,
                         OmegaSide side) {
    const QuasiPeriodicFunction& partner = side == OmegaSide::Direct ? pair.PhiD : pair.PsiD;
    if (!psi.is_spinor()) throw invalid_input("omega: psi must be a spinor");
    PeriodicField gz = mul_fields(partner.comp(0), psi.comp(0));
    PeriodicField gzb = mul_fields(partner.comp(1), psi.comp(1));
    gzb *= -1.0;
    return {psi.exponents() + partner.exponents(), std::move(gz), std::move(gzb)};
}

} // namespace

PQPotential PQPotential::from_dirac(const DiracPotential& pot) {
    PeriodicField q = pot.U;
    q *= -1.0;
    return {pot.U.conjugated(), std::move(q)};
}

DarbouxPair make_pair_checked(const DiracPotential& pot, QuasiPeriodicFunction PsiD,
                              QuasiPeriodicFunction PhiD, PairOptions opt) {
    const auto [k1, k2] = PsiD.multipliers();
    const auto [l1, l2] = PhiD.multipliers();
    if (std::abs(k1 * l1 - 1.0) > opt.reciprocity_tol ||
        std::abs(k2 * l2 - 1.0) > opt.reciprocity_tol)
        throw invalid_input("darboux pair: multipliers of PhiD are not reciprocal to PsiD");
    const double r1 = dirac_residual(pot, PsiD, false);
    const double r2 = dirac_residual(pot, PhiD, true);
    if (r1 > opt.residual_tol || r2 > opt.residual_tol)
        throw invalid_input("darboux pair: residuals " + std::to_string(r1) + ", " +
                            std::to_string(r2) + " above tolerance");
    return {std::move(PsiD), std::move(PhiD)};
}

DarbouxPair build_pair(const DiracPotential& pot, cplx muPsi, int indexPsi, cplx muPhi,
                       int indexPhi, PairOptions opt) {
    FloquetOptions fo;
    fo.residual_threshold = opt.residual_tol;
    QuasiPeriodicFunction PsiD = floquet_function(pot, muPsi, indexPsi, fo);
    fo.adjoint = true;
    QuasiPeriodicFunction PhiD = floquet_function(pot, muPhi, indexPhi, fo);
    return make_pair_checked(pot, std::move(PsiD), std::move(PhiD), opt);
}

OmegaResult omega_kernel(const QuasiPeriodicFunction& psi, const DarbouxPair& pair,
                         OmegaSide side, OmegaNormalization norm) {
    const OmegaIntegrand in = integrand(psi, pair, side);
    const Lattice& lat = psi.lattice();
    PeriodicField w(lat, in.gz.cutoff());

    if (norm.kind == OmegaNormalization::Floquet) {
        try {
            w = solve_shifted(Deriv::Holomorphic, in.exponents.mu, in.gz,
                              /*check_all_modes=*/true);
        } catch (const resonance_error&) {
            const auto [i1, i2] = period_integrals(psi, pair, side);
            const double scale = in.gz.norm() + in.gzb.norm() + 1e-300;
            if (std::abs(i1) > 1e-10 * scale || std::abs(i2) > 1e-10 * scale)
                throw obstruction_error(
                    "omega: trivial multiplier ratio with nonzero periods (Lset point)");
            throw invalid_input(
                "omega: multiplier ratios are trivial and periods vanish; "
                "use basepoint normalization");
        }
    } else {
        const auto mode = mode_shift_between(ExponentPair(0.0, 0.0), in.exponents, lat);
        if (!mode)
            throw invalid_input("omega basepoint: multiplier ratios are not trivial");
        const auto [i1, i2] = period_integrals(psi, pair, side);
        const double scale = in.gz.norm() + in.gzb.norm() + 1e-300;
        if (std::abs(i1) > 1e-8 * scale || std::abs(i2) > 1e-8 * scale)
            throw invalid_input("omega basepoint: period integrals do not vanish");
        // the resonant mode of (d + mu) is (-m0,-n0); its coefficient is the
        // integration constant, fixed by omega(0) = c
        PeriodicField g = in.gz;
        g.at(-(*mode)[0], -(*mode)[1]) = 0.0;
        w = solve_shifted(Deriv::Holomorphic, in.exponents.mu, g);
        cplx sum = 0.0;
        for (const auto& c : w.coeffs()) sum += c;
        w.at(-(*mode)[0], -(*mode)[1]) = norm.c - sum;
    }

    // consistency of the dbar-equation
    PeriodicField defect = derivative(w, Deriv::Antiholomorphic);
    PeriodicField nuw = w;
    nuw *= in.exponents.nu;
    defect += nuw;
    defect -= in.gzb;
    const double rel = defect.norm() / (w.norm() + 1e-300);

    return {QuasiPeriodicFunction(in.exponents, std::move(w)), rel};
}

std::pair<cplx, cplx> period_integrals(const QuasiPeriodicFunction& psi, const DarbouxPair& pair,
                                       OmegaSide side) {
    const OmegaIntegrand in = integrand(psi, pair, side);
    const Lattice& lat = psi.lattice();
    const int N = in.gz.cutoff();
    cplx I1 = 0.0, I2 = 0.0;
    for (int j = 1; j <= 2; ++j) {
        const cplx g = lat.gamma(j);
        cplx sum = 0.0;
        for (int m = -N; m <= N; ++m)
            for (int n = -N; n <= N; ++n) {
                const cplx cz = in.gz.at(m, n), czb = in.gzb.at(m, n);
                if (cz == 0.0 && czb == 0.0) continue;
                const auto wv = lat.wave_vector(m, n);
                const cplx c = in.exponents.mu * g + in.exponents.nu * std::conj(g) +
                               cplx(0.0, wv[0] * g.real() + wv[1] * g.imag());
                sum += (g * cz + std::conj(g) * czb) * expm1_over(c);
            }
        (j == 1 ? I1 : I2) = sum;
    }
    return {I1, I2};
}

Deformation deform(const DarbouxPair& pair, const QuasiPeriodicFunction& psi,
                   const QuasiPeriodicFunction& omega) {
    const ExponentPair zero(0.0, 0.0);
    QuasiPeriodicFunction dp(pair.PsiD.exponents() + pair.PhiD.exponents(),
                             mul_fields(pair.PsiD.comp(0), pair.PhiD.comp(1)));
    dp.comp(0) *= -1.0;
    QuasiPeriodicFunction dq(pair.PsiD.exponents() + pair.PhiD.exponents(),
                             mul_fields(pair.PsiD.comp(1), pair.PhiD.comp(0)));
    PeriodicField deltaP = dp.recentered(zero, /*grow=*/true).comp(0);
    PeriodicField deltaQ = dq.recentered(zero, /*grow=*/true).comp(0);
    PeriodicField deltaU = deltaQ;
    deltaU *= -1.0;
    QuasiPeriodicFunction deltaPsi =
        qp_mul(omega, pair.PsiD).recentered(psi.exponents(), /*grow=*/true);
    return {std::move(deltaP), std::move(deltaQ), std::move(deltaU), std::move(deltaPsi)};
}

double isospectral_defect(const DiracPotential& pot, const PeriodicField& deltaU, cplx mu,
                          double eps, DefectOptions opt) {
    if (eps <= 0.0) throw invalid_input("isospectral_defect: eps must be positive");
    const int N = opt.cutoff > 0 ? opt.cutoff : pot.U.cutoff();
    if (opt.margin < 0 || opt.margin >= N)
        throw invalid_input("isospectral_defect: margin must lie in [0, cutoff)");
    PeriodicField pert = pot.U.resized(N);
    PeriodicField step = deltaU.resized(N);
    step *= eps;
    pert += step;

    SliceOptions so;
    so.adjoint = opt.adjoint;
    so.cutoff = N;
    const SliceSpectrum a = slice_spectrum(DiracPotential(pot.U.resized(N)), mu, so);
    const SliceSpectrum b = slice_spectrum(DiracPotential(std::move(pert)), mu, so);

    auto windowed = [&](const SliceSpectrum& s) {
        std::vector<cplx> out;
        for (const auto& e : s.entries)
            if (std::max(std::abs(e.dom_m), std::abs(e.dom_n)) <= N - opt.margin)
                out.push_back(e.nu);
        return out;
    };
    const auto va = windowed(a), vb = windowed(b);
    if (va.size() != vb.size())
        throw numerical_error("isospectral_defect: retained cardinalities differ (" +
                              std::to_string(va.size()) + " vs " + std::to_string(vb.size()) +
                              ")");
    const int n = int(va.size());
    if (n == 0) return 0.0;
    Eigen::MatrixXd cost(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cost(i, j) = std::abs(va[i] - vb[j]);
    const auto match = linalg::assignment(cost);
    double d = 0.0;
    for (int i = 0; i < n; ++i) d = std::max(d, cost(i, match[i]));
    return d;
}

} // namespace floq

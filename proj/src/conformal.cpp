#include "floq/conformal.hpp"

#include <cmath>
#include <json.hpp>

namespace floq {

std::array<double, 4> conformal_vector_field(const std::array<double, 4>& x) {
    return {2.0 * x[0] * x[2], 2.0 * x[1] * x[2],
            x[2] * x[2] - x[0] * x[0] - x[1] * x[1] - x[3] * x[3], 2.0 * x[3] * x[2]};
}

TauDerivatives tau_derivatives(const FlowState& s, double close_tol) {
    const int N = s.U.U.cutoff();
    const Lattice& lat = s.U.U.lattice();
    const ImmersedTorus torus = integrate_surface(coordinate_derivatives(s.Psi, s.Phi));
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 2; ++j)
            if (torus.period_residuals[k][j] > close_tol)
                throw obstruction_error("tau_derivatives: surface fails to close, residual " +
                                        std::to_string(torus.period_residuals[k][j]));

    const cplx I(0.0, 1.0);
    PeriodicField x3m4 = torus.coords[2].periodic - (I * torus.coords[3].periodic);
    PeriodicField x3p4 = torus.coords[2].periodic + (I * torus.coords[3].periodic);
    PeriodicField x1m2 = torus.coords[0].periodic - (I * torus.coords[1].periodic);

    const ExponentPair zero(0.0, 0.0);
    auto conj_comp = [&](const QuasiPeriodicFunction& f, int k) {
        QuasiPeriodicFunction c(f.exponents().conj_pair(), f.comp(k).conjugated());
        return c.recentered(f.exponents()).comp(0);
    };

    // dU = Phi1 conj(Psi1) - conj(Phi2) Psi2, recentered to trivial exponents
    QuasiPeriodicFunction t1(s.Phi.exponents() + s.Psi.exponents().conj_pair(),
                             mul_fields(s.Phi.comp(0), s.Psi.comp(0).conjugated(), N));
    QuasiPeriodicFunction t2(s.Phi.exponents().conj_pair() + s.Psi.exponents(),
                             mul_fields(s.Phi.comp(1).conjugated(), s.Psi.comp(1), N));
    PeriodicField dU = t1.recentered(zero).comp(0) - t2.recentered(zero).comp(0);

    const PeriodicField cP1 = conj_comp(s.Psi, 0), cP2 = conj_comp(s.Psi, 1);
    const PeriodicField cF1 = conj_comp(s.Phi, 0), cF2 = conj_comp(s.Phi, 1);

    PeriodicField dPsi1 = mul_fields(x3m4, s.Psi.comp(0), N) - (I * mul_fields(x1m2, cP2, N));
    PeriodicField dPsi2 = mul_fields(x3m4, s.Psi.comp(1), N) + (I * mul_fields(x1m2, cP1, N));
    PeriodicField dPhi1 = mul_fields(x3p4, s.Phi.comp(0), N) - (I * mul_fields(x1m2, cF2, N));
    PeriodicField dPhi2 = mul_fields(x3p4, s.Phi.comp(1), N) + (I * mul_fields(x1m2, cF1, N));

    return {std::move(dU),
            {s.Psi.exponents(), std::move(dPsi1), std::move(dPsi2)},
            {s.Phi.exponents(), std::move(dPhi1), std::move(dPhi2)}};
}

namespace {

struct Packed {
    PeriodicField U, P1, P2, F1, F2;

    Packed axpy(double a, const TauDerivatives& d) const {
        Packed out = *this;
        auto add = [a](PeriodicField& dst, const PeriodicField& src) {
            PeriodicField t = src;
            t *= a;
            dst += t;
        };
        add(out.U, d.dU);
        add(out.P1, d.dPsi.comp(0));
        add(out.P2, d.dPsi.comp(1));
        add(out.F1, d.dPhi.comp(0));
        add(out.F2, d.dPhi.comp(1));
        return out;
    }
};

FlowState unpack(const Packed& p, const FlowState& proto, double tau) {
    return {DiracPotential(p.U, false),
            {proto.Psi.exponents(), p.P1, p.P2},
            {proto.Phi.exponents(), p.F1, p.F2},
            tau};
}

} // namespace

std::vector<FlowState> flow(const FlowState& s0, double dtau, int steps, FlowOptions opt) {
    std::vector<FlowState> traj;
    traj.push_back(s0);
    Packed y{s0.U.U, s0.Psi.comp(0), s0.Psi.comp(1), s0.Phi.comp(0), s0.Phi.comp(1)};
    for (int step = 0; step < steps; ++step) {
        const double tau = s0.tau + step * dtau;
        try {
            const TauDerivatives k1 = tau_derivatives(unpack(y, s0, tau), opt.close_tol);
            const TauDerivatives k2 =
                tau_derivatives(unpack(y.axpy(dtau / 2, k1), s0, tau + dtau / 2), opt.close_tol);
            const TauDerivatives k3 =
                tau_derivatives(unpack(y.axpy(dtau / 2, k2), s0, tau + dtau / 2), opt.close_tol);
            const TauDerivatives k4 =
                tau_derivatives(unpack(y.axpy(dtau, k3), s0, tau + dtau), opt.close_tol);
            y = y.axpy(dtau / 6, k1)
                    .axpy(dtau / 3, k2)
                    .axpy(dtau / 3, k3)
                    .axpy(dtau / 6, k4);
        } catch (const numerical_error& e) {
            throw aborted_trajectory_error(std::string("flow: ") + e.what(), step);
        }
        FlowState next = unpack(y, s0, s0.tau + (step + 1) * dtau);
        const double r = std::max(dirac_residual(next.U, next.Psi, false),
                                  dirac_residual(next.U, next.Phi, true));
        if (r > opt.residual_tol)
            throw aborted_trajectory_error(
                "flow: residual " + std::to_string(r) + " above tolerance after step " +
                    std::to_string(step + 1),
                step);
        traj.push_back(std::move(next));
    }
    return traj;
}

InvarianceReport invariance_report(const std::vector<FlowState>& traj,
                                   const std::vector<cplx>& contour, InvarianceOptions opt) {
    if (traj.empty()) throw invalid_input("invariance_report: empty trajectory");
    const FlowState& first = traj.front();
    const FlowState& last = traj.back();
    InvarianceReport rep;

    for (const auto& s : traj)
        rep.max_residual = std::max({rep.max_residual, dirac_residual(s.U, s.Psi, false),
                                     dirac_residual(s.U, s.Phi, true)});

    const double w0 = willmore(first.U);
    rep.willmore_drift = std::abs(willmore(last.U) - w0) / std::max(std::abs(w0), 1e-300);

    if (!contour.empty()) {
        const MultiplierCloud ca = multiplier_cloud(first.U, contour, opt.cloud);
        const MultiplierCloud cb = multiplier_cloud(last.U, contour, opt.cloud);
        const auto d = cloud_distance(ca, cb);
        rep.cloud_drift = d.value;
        rep.cloud_diagnostics = d.diagnostics;
    }

    // coordinates from evolved spinors vs the Theorem-3 ODE on the initial grid
    const int P = opt.coord_grid;
    const auto X0 =
        integrate_surface(coordinate_derivatives(first.Psi, first.Phi)).eval_grid(P);
    const auto X1 = integrate_surface(coordinate_derivatives(last.Psi, last.Phi)).eval_grid(P);
    const int steps = int(traj.size()) - 1;
    const double h = steps > 0 ? (last.tau - first.tau) / steps : 0.0;
    double crosscheck = 0.0;
    for (size_t i = 0; i < X0.size(); ++i) {
        std::array<double, 4> x = X0[i];
        auto add = [](const std::array<double, 4>& a, double c, const std::array<double, 4>& b) {
            std::array<double, 4> r;
            for (int k = 0; k < 4; ++k) r[k] = a[k] + c * b[k];
            return r;
        };
        for (int s = 0; s < steps; ++s) {
            const auto k1 = conformal_vector_field(x);
            const auto k2 = conformal_vector_field(add(x, h / 2, k1));
            const auto k3 = conformal_vector_field(add(x, h / 2, k2));
            const auto k4 = conformal_vector_field(add(x, h, k3));
            for (int k = 0; k < 4; ++k)
                x[k] += h / 6 * (k1[k] + 2 * k2[k] + 2 * k3[k] + k4[k]);
        }
        for (int k = 0; k < 4; ++k)
            crosscheck = std::max(crosscheck, std::abs(x[k] - X1[i][k]));
    }
    rep.coord_crosscheck = crosscheck;

    std::vector<int> checkpoints = opt.checkpoints;
    if (checkpoints.empty()) checkpoints = {0, steps};
    for (int ci : checkpoints) {
        if (ci < 0 || ci >= int(traj.size()))
            throw invalid_input("invariance_report: checkpoint outside trajectory");
        std::vector<int> dims;
        for (const auto& mult : opt.kernel_at) {
            const auto ks = kernel_singular_values(traj[ci].U, mult, 8, false, opt.kernel_cutoff);
            dims.push_back(kernel_dimension(ks));
        }
        rep.kernel_trace.push_back(std::move(dims));
    }
    return rep;
}

std::string InvarianceReport::to_json() const {
    nlohmann::json j;
    j["cloud_drift"] = cloud_drift;
    j["willmore_drift"] = willmore_drift;
    j["max_residual"] = max_residual;
    j["coord_crosscheck"] = coord_crosscheck;
    j["kernel_trace"] = kernel_trace;
    return j.dump(2) + "\n";
}

std::array<double, 3> stereographic_project(const std::array<double, 4>& x) {
    if (std::abs(1.0 - x[3]) <= 1e-12)
        throw invalid_input("stereographic_project: pole point x4 = 1");
    const double d = 1.0 - x[3];
    return {x[0] / d, x[1] / d, x[2] / d};
}

} // namespace floq

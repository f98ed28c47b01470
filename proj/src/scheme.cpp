#include "hemo/scheme.hpp"

#include <cmath>
#include <string>

#include "hemo/errors.hpp"
#include "hemo/kernels.hpp"

namespace hemo {

namespace {

void fill_ghost(std::vector<double>& dst, const std::vector<double>& interior,
                double left, double right) {
    const std::size_t n = interior.size();
    dst.resize(n + 2);
    dst[0] = left;
    std::copy(interior.begin(), interior.end(), dst.begin() + 1);
    dst[n + 1] = right;
}

void check_positivity(const EdgeState& st) {
    for (std::size_t i = 0; i < st.size(); ++i) {
        if (!(st.A[i] > 0.0) || !std::isfinite(st.A[i]))
            throw SolverError("cross-section became nonpositive in cell " +
                              std::to_string(i) + " (A = " +
                              std::to_string(st.A[i]) + ")");
    }
}

void refresh_flux_variable(EdgeState& st, const FluxCoef& c) {
    const std::size_t n = st.size();
    const kernels::Backend& k = kernels::active();
    if (st.form == ModelForm::Flow)
        k.flux_flow(st.A.data(), st.Q.data(), n, c, st.VA.data(), st.VQ.data());
    else
        k.flux_velocity(st.A.data(), st.Q.data(), n, c, st.VA.data(),
                        st.VQ.data());
}

}  // namespace

double minmod(double a, double b) {
    if (a * b > 0.0) return std::fabs(a) <= std::fabs(b) ? a : b;
    return 0.0;
}

std::array<double, 2> lf_interface_flux(const std::array<double, 2>& Ul,
                                        const std::array<double, 2>& Ur,
                                        const std::array<double, 2>& Vl,
                                        const std::array<double, 2>& Vr,
                                        double lambda) {
    const double hl = 0.5 * lambda;
    return {0.5 * (Vl[0] + Vr[0]) - hl * (Ur[0] - Ul[0]),
            0.5 * (Vl[1] + Vr[1]) - hl * (Ur[1] - Ul[1])};
}

double compute_dt(double lambda, double dx, double cfl) {
    if (!(lambda > 0.0)) throw std::invalid_argument("compute_dt: lambda <= 0");
    if (!(dx > 0.0)) throw std::invalid_argument("compute_dt: dx <= 0");
    return cfl * dx / lambda;
}

double max_wave_speed(const EdgeState& st, const VesselParams& p) {
    const FluxCoef c = make_flux_coef(p);
    const kernels::Backend& k = kernels::active();
    if (st.form == ModelForm::Flow)
        return k.max_speed_flow(st.A.data(), st.Q.data(), st.size(), c);
    return k.max_speed_velocity(st.A.data(), st.Q.data(), st.size(), c);
}

void EdgeWorkspace::ensure(std::size_t n) {
    const std::size_t m = n + 2;
    for (auto* v : {&Ag, &Qg, &VAg, &VQg, &sP1, &sM1, &sP2, &sM2, &L2A, &L2Q})
        v->resize(m);
    for (auto* v : {&F1, &F2, &dP1, &dM1, &dP2, &dM2, &K1, &K2}) v->resize(m - 1);
    src.resize(n);
}

void step_limit(EdgeState& st, const VesselParams& p, const Grid& g,
                double lambda, double dt, const PointState& left,
                const PointState& right, int order, EdgeWorkspace& ws,
                bool left_first_order_iface, bool right_first_order_iface) {
    const std::size_t n = st.size();
    const std::size_t m = n + 2;
    const double dx = g.dx();
    const FluxCoef coef = make_flux_coef(p);
    const kernels::Backend& k = kernels::active();
    ws.ensure(n);

    fill_ghost(ws.Ag, st.A, left.A, right.A);
    fill_ghost(ws.Qg, st.Q, left.Q, right.Q);
    fill_ghost(ws.VAg, st.VA, left.VA, right.VA);
    fill_ghost(ws.VQg, st.VQ, left.VQ, right.VQ);

    const double half_lambda = 0.5 * lambda;
    k.lf_fluxes(ws.Ag.data(), ws.VAg.data(), m, half_lambda, ws.F1.data());
    k.lf_fluxes(ws.Qg.data(), ws.VQg.data(), m, half_lambda, ws.F2.data());

    if (order == 2) {
        const double lf0_1 = ws.F1[0], lf0_2 = ws.F2[0];
        const double lfn_1 = ws.F1[n], lfn_2 = ws.F2[n];
        const double inv2dx = 1.0 / (2.0 * dx);
        k.char_diffs(ws.Ag.data(), ws.VAg.data(), m, lambda, inv2dx,
                     ws.dP1.data(), ws.dM1.data());
        k.char_diffs(ws.Qg.data(), ws.VQg.data(), m, lambda, inv2dx,
                     ws.dP2.data(), ws.dM2.data());
        k.minmod_slopes(ws.dP1.data(), m, ws.sP1.data());
        k.minmod_slopes(ws.dM1.data(), m, ws.sM1.data());
        k.minmod_slopes(ws.dP2.data(), m, ws.sP2.data());
        k.minmod_slopes(ws.dM2.data(), m, ws.sM2.data());
        const double half_dx = 0.5 * dx;
        k.muscl_add(ws.sP1.data(), ws.sM1.data(), m - 1, half_dx, ws.F1.data());
        k.muscl_add(ws.sP2.data(), ws.sM2.data(), m - 1, half_dx, ws.F2.data());
        // Junction interfaces stay first order: the coupling states were
        // constructed against the plain LF flux relations.
        if (left_first_order_iface) {
            ws.F1[0] = lf0_1;
            ws.F2[0] = lf0_2;
        }
        if (right_first_order_iface) {
            ws.F1[n] = lfn_1;
            ws.F2[n] = lfn_2;
        }
    }

    const bool with_source = p.mu > 0.0 && st.form == ModelForm::Flow;
    if (with_source)
        for (std::size_t i = 0; i < n; ++i)
            ws.src[i] = viscous_source(p, st.A[i], st.Q[i]);

    const double r = dt / dx;
    k.cell_update(st.A.data(), ws.F1.data(), n, r);
    k.cell_update(st.Q.data(), ws.F2.data(), n, r);
    if (with_source)
        for (std::size_t i = 0; i < n; ++i) st.Q[i] += dt * ws.src[i];

    check_positivity(st);
    refresh_flux_variable(st, coef);
}

void step_relaxation(EdgeState& st, const VesselParams& p, const Grid& g,
                     double lambda, double dt, double epsilon,
                     const PointState& left, const PointState& right,
                     EdgeWorkspace& ws) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("step_relaxation: epsilon must be > 0");
    const std::size_t n = st.size();
    const std::size_t m = n + 2;
    const double dx = g.dx();
    const kernels::Backend& k = kernels::active();
    ws.ensure(n);

    fill_ghost(ws.Ag, st.A, left.A, right.A);
    fill_ghost(ws.Qg, st.Q, left.Q, right.Q);
    fill_ghost(ws.VAg, st.VA, left.VA, right.VA);
    fill_ghost(ws.VQg, st.VQ, left.VQ, right.VQ);

    const double half_lambda = 0.5 * lambda;
    // U equation: flux is V.
    k.lf_fluxes(ws.Ag.data(), ws.VAg.data(), m, half_lambda, ws.F1.data());
    k.lf_fluxes(ws.Qg.data(), ws.VQg.data(), m, half_lambda, ws.F2.data());
    // V equation: flux is lambda^2 U.
    const double lam2 = lambda * lambda;
    for (std::size_t i = 0; i < m; ++i) {
        ws.L2A[i] = lam2 * ws.Ag[i];
        ws.L2Q[i] = lam2 * ws.Qg[i];
    }
    k.lf_fluxes(ws.VAg.data(), ws.L2A.data(), m, half_lambda, ws.K1.data());
    k.lf_fluxes(ws.VQg.data(), ws.L2Q.data(), m, half_lambda, ws.K2.data());

    const bool with_source = p.mu > 0.0 && st.form == ModelForm::Flow;
    if (with_source)
        for (std::size_t i = 0; i < n; ++i)
            ws.src[i] = viscous_source(p, st.A[i], st.Q[i]);

    const double r = dt / dx;
    k.cell_update(st.A.data(), ws.F1.data(), n, r);
    k.cell_update(st.Q.data(), ws.F2.data(), n, r);
    if (with_source)
        for (std::size_t i = 0; i < n; ++i) st.Q[i] += dt * ws.src[i];
    k.cell_update(st.VA.data(), ws.K1.data(), n, r);
    k.cell_update(st.VQ.data(), ws.K2.data(), n, r);

    check_positivity(st);

    // Implicit relaxation source, solved in closed form.
    const double w = dt / epsilon;
    const double inv1w = 1.0 / (1.0 + w);
    for (std::size_t i = 0; i < n; ++i) {
        const std::array<double, 2> F =
            st.form == ModelForm::Flow ? flux_flow(p, st.A[i], st.Q[i])
                                       : flux_velocity(p, st.A[i], st.Q[i]);
        st.VA[i] = (st.VA[i] + w * F[0]) * inv1w;
        st.VQ[i] = (st.VQ[i] + w * F[1]) * inv1w;
    }
}

}  // namespace hemo

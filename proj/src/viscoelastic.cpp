#include "hemo/viscoelastic.hpp"

#include <cmath>
#include <stdexcept>

#include "hemo/errors.hpp"
#include "hemo/kernels.hpp"
#include "hemo/physics.hpp"
#include "hemo/tridiag.hpp"

namespace hemo {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

std::vector<double> implicit_diffusion_solve(const std::vector<double>& qhat,
                                             const std::vector<double>& D,
                                             double dt, double dx,
                                             const DiffusionClosure& left,
                                             const DiffusionClosure& right) {
    const std::size_t n = qhat.size();
    if (D.size() != n)
        throw std::invalid_argument("implicit_diffusion_solve: size mismatch");
    if (n == 0) return {};
    if (!(dx > 0.0))
        throw std::invalid_argument("implicit_diffusion_solve: dx <= 0");

    Tridiagonal m;
    m.lower.assign(n, 0.0);
    m.diag.assign(n, 0.0);
    m.upper.assign(n, 0.0);
    std::vector<double> rhs = qhat;
    const double inv_dx2 = 1.0 / (dx * dx);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = dt * D[i] * inv_dx2;
        if (!(w >= 0.0))
            throw std::invalid_argument(
                "implicit_diffusion_solve: negative diffusivity");
        m.diag[i] = 1.0 + 2.0 * w;
        if (i > 0) m.lower[i] = -w;
        if (i + 1 < n) m.upper[i] = -w;
        if (i == 0) {
            if (left.kind == DiffusionClosure::Kind::Mirror)
                m.diag[i] -= w;  // ghost equals first cell
            else
                rhs[i] += w * left.value;  // ghost pinned to boundary flow
        }
        if (i + 1 == n) {
            if (right.kind == DiffusionClosure::Kind::Mirror)
                m.diag[i] -= w;
            else
                rhs[i] += w * right.value;
        }
    }
    return thomas_solve(m, rhs);
}

void viscoelastic_step(EdgeState& st, const VesselParams& p, const Grid& g,
                       double dt, const std::vector<double>& A_coef,
                       const DiffusionClosure& left,
                       const DiffusionClosure& right) {
    if (p.gamma == 0.0) return;
    if (st.form != ModelForm::Flow)
        throw std::invalid_argument(
            "viscoelastic_step: requires the (A, Q) form");
    const std::size_t n = st.size();
    if (A_coef.size() != n)
        throw std::invalid_argument("viscoelastic_step: A_coef size mismatch");

    const double scale =
        p.gamma * std::sqrt(kPi) / (2.0 * p.rho * p.A0 * std::sqrt(p.A0));
    std::vector<double> D(n);
    for (std::size_t i = 0; i < n; ++i) D[i] = scale * A_coef[i];

    st.Q = implicit_diffusion_solve(st.Q, D, dt, g.dx(), left, right);

    const FluxCoef c = make_flux_coef(p);
    kernels::active().flux_flow(st.A.data(), st.Q.data(), n, c, st.VA.data(),
                                st.VQ.data());
}

}  // namespace hemo

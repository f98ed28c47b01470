#pragma once

#include <vector>

#include "hemo/types.hpp"

namespace hemo {

// End closure of the implicit diffusion solve for Q. Mirror folds the ghost
// value Q_0 = Q_1 into the matrix (zero-gradient); Dirichlet pins the ghost
// to a known boundary flow value.
struct DiffusionClosure {
    enum class Kind { Mirror, Dirichlet };
    Kind kind = Kind::Mirror;
    double value = 0.0;

    static DiffusionClosure mirror() { return {Kind::Mirror, 0.0}; }
    static DiffusionClosure dirichlet(double q) { return {Kind::Dirichlet, q}; }
};

// Solves (I - dt*D_j*L) q = qhat with L the three-point second difference on
// a uniform grid of spacing dx, D_j a per-cell diffusivity, and the given end
// closures. Unconditionally stable in dt.
std::vector<double> implicit_diffusion_solve(const std::vector<double>& qhat,
                                             const std::vector<double>& D,
                                             double dt, double dx,
                                             const DiffusionClosure& left,
                                             const DiffusionClosure& right);

// Viscoelastic wall correction after the hyperbolic substep (Flow form only):
// Q^{ new } solves (I - dt*D*L) Q = Q, with per-cell diffusivity
// D_j = gamma*sqrt(pi)*A_coef_j / (2*rho*A0^(3/2)). A_coef is the
// cross-section the coefficient is frozen at (the pre-step A of the same
// step). A is untouched; V is refreshed to F(U) afterwards. No-op for
// gamma = 0.
void viscoelastic_step(EdgeState& st, const VesselParams& p, const Grid& g,
                       double dt, const std::vector<double>& A_coef,
                       const DiffusionClosure& left,
                       const DiffusionClosure& right);

}  // namespace hemo

#pragma once

#include <array>
#include <vector>

#include "hemo/physics.hpp"
#include "hemo/types.hpp"

namespace hemo {

// Slope limiter: 0 on sign change, the smaller-magnitude argument otherwise.
double minmod(double a, double b);

// Relaxation LF flux across one interface:
// (V_l + V_r)/2 - (lambda/2)*(U_r - U_l), componentwise.
std::array<double, 2> lf_interface_flux(const std::array<double, 2>& Ul,
                                        const std::array<double, 2>& Ur,
                                        const std::array<double, 2>& Vl,
                                        const std::array<double, 2>& Vr,
                                        double lambda);

// dt = cfl * dx / lambda.
double compute_dt(double lambda, double dx, double cfl);

// Smallest admissible relaxation speed over all cells of one edge.
double max_wave_speed(const EdgeState& st, const VesselParams& p);

// Scratch buffers reused across steps of one edge.
struct EdgeWorkspace {
    std::vector<double> Ag, Qg, VAg, VQg;      // ghost-extended cell arrays
    std::vector<double> F1, F2;                // interface fluxes
    std::vector<double> dP1, dM1, dP2, dM2;    // characteristic differences
    std::vector<double> sP1, sM1, sP2, sM2;    // limited slopes
    std::vector<double> L2A, L2Q, K1, K2;      // finite-epsilon scratch
    std::vector<double> src;                   // viscous source per cell

    void ensure(std::size_t n);
};

// One explicit step of the relaxed (epsilon -> 0) scheme: LF-type interface
// fluxes, optional MUSCL correction (order = 2), conservative update,
// explicit friction source, then V := F(U). Boundary interface fluxes are
// built from the supplied endpoint states; at order 2 the endpoint states
// also serve as ghost cells for the slope stencils, and *_first_order_iface
// suppresses the flux correction at that end (used at junctions).
// Throws SolverError naming the first cell where A <= 0 appears.
void step_limit(EdgeState& st, const VesselParams& p, const Grid& g,
                double lambda, double dt, const PointState& left,
                const PointState& right, int order, EdgeWorkspace& ws,
                bool left_first_order_iface = false,
                bool right_first_order_iface = false);

// One step of the finite-epsilon relaxation scheme: explicit LF-type update
// of U (flux V) and of V (flux lambda^2 U), then the implicit relaxation
// source in closed form, V = (V* + (dt/epsilon) F(U_new)) / (1 + dt/epsilon).
// First order in space; reduces to step_limit's update of U when V = F(U).
void step_relaxation(EdgeState& st, const VesselParams& p, const Grid& g,
                     double lambda, double dt, double epsilon,
                     const PointState& left, const PointState& right,
                     EdgeWorkspace& ws);

}  // namespace hemo

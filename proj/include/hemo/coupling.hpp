#pragma once

#include "hemo/types.hpp"

namespace hemo {

// Total pressure alpha*rho/2*(Q/A)^2 + p(A); for velocity-form states the
// second component already holds u, so it reads rho/2*u^2 + p(A).
double total_pressure(const PointState& s, const VesselParams& p, ModelForm form);

// States a junction solver hands back for the touching edge ends. Each lies
// on the outgoing straight characteristic of its own edge, so plugging them
// in as ghost states closes the edge update without reflections.
struct JunctionStates11 {
    PointState parent;  // right end of the incoming edge
    PointState child;   // left end of the outgoing edge
};

struct JunctionStates12 {
    PointState parent;
    PointState child1;
    PointState child2;
};

// Conditions imposed across a one-to-one junction (parent trace = last cell
// of the incoming edge, child trace = first cell of the outgoing edge):
//   flow continuity of the junction states,
//   total-pressure continuity of the junction states,
//   equality of the mass fluxes the two edges will see,
//   total-pressure continuity re-expressed through the momentum fluxes.
// The last pair makes the coupling exact for a fictitious split of a single
// vessel: the junction then reproduces the flux of the unsplit scheme.
//
// couple_one_to_one reduces the system to one scalar equation in the child
// area (the flow variable solves a quadratic along the way) and polishes the
// root; couple_one_to_one_newton solves the same four residuals directly and
// serves as an independent cross-check.
JunctionStates11 couple_one_to_one(const PointState& parent_tr, const PointState& child_tr,
                                   const VesselParams& pin, const VesselParams& pout,
                                   double lambda);
JunctionStates11 couple_one_to_one_newton(const PointState& parent_tr,
                                          const PointState& child_tr,
                                          const VesselParams& pin, const VesselParams& pout,
                                          double lambda);
// Velocity-form edges (alpha == 1 only).
JunctionStates11 couple_one_to_one_velocity(const PointState& parent_tr,
                                            const PointState& child_tr,
                                            const VesselParams& pin,
                                            const VesselParams& pout, double lambda);

// One parent feeding two children: flow splits, total pressure is continuous
// into each child, the parent mass flux equals the sum of the child mass
// fluxes, and the momentum-flux form of total-pressure continuity holds per
// child. Six unknowns, damped Newton.
JunctionStates12 couple_one_to_two(const PointState& parent_tr, const PointState& child1_tr,
                                   const PointState& child2_tr, const VesselParams& pin,
                                   const VesselParams& pout1, const VesselParams& pout2,
                                   double lambda);

// Coupling defect measured on the interior traces next to the junction, the
// quantities reported by the convergence studies.
struct CouplingErrors {
    double flow = 0.0;            // |Q mismatch| across the node
    double total_pressure = 0.0;  // largest |total-pressure jump| into a child
};

CouplingErrors coupling_errors_11(const PointState& parent_tr, const PointState& child_tr,
                                  const VesselParams& pin, const VesselParams& pout,
                                  ModelForm form);
CouplingErrors coupling_errors_12(const PointState& parent_tr, const PointState& child1_tr,
                                  const PointState& child2_tr, const VesselParams& pin,
                                  const VesselParams& pout1, const VesselParams& pout2,
                                  ModelForm form);

}  // namespace hemo

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "hemo/network.hpp"

namespace hemo {

// Shared physical setup of the built-in studies: one vessel population
// (A0 = 6.6 cm^2, h0 = 0.26 cm, nu = 0.5, E = 2.43e6 dyne/cm^2,
// rho = 1.06 g/cm^3, alpha = 1, inviscid), CGS throughout.
VesselParams baseline_vessel(double A0 = 6.6, double E = 2.43e6);

// Runs make(policy) twice: a probe with the per-step minimal speed to learn
// the global bound, then the definitive run at that fixed speed (so every
// step uses one constant dt per level), retrying with a slightly larger
// speed if the bound is ever exceeded.
struct RunOutput {
    Network net;
    SimulationRecord rec;
};
RunOutput calibrated_run(const std::function<Network(LambdaPolicy)>& make);

struct ConvergenceRow {
    std::size_t cells = 0;
    double errA = 0.0, eocA = 0.0;
    double errQ = 0.0, eocQ = 0.0;
};
struct ConvergenceResult {
    std::vector<ConvergenceRow> rows;  // eoc fields are 0 in the first row
};

// Gaussian area bump relaxing in a closed-off tube of 200 cm, zero-gradient
// ends, t = 0.05 s; errors against a 6400-cell run of the same order.
ConvergenceResult study_smooth_bump(int order);

// Sinusoidal pressure pulse driven into a 400 cm vessel at rest,
// zero-gradient outflow, t = 0.1 s; errors against a 6400-cell run of the
// same order.
ConvergenceResult study_inlet_pulse(int order);

struct CouplingRow {
    std::size_t cells = 0;     // per edge
    double e_flow = 0.0, eoc_flow = 0.0;
    double e_pt = 0.0, eoc_pt = 0.0;
};
struct CouplingResult {
    std::vector<CouplingRow> rows;
};

// Pressure pulse crossing a junction where the reference section (or the
// wall stiffness) jumps; reports the flow and total-pressure defects across
// the node at t = 0.5 s. First-order scheme.
CouplingResult study_junction_mismatch(bool stiffness_case);

struct DampingCompare {
    double max_Q_elastic = 0.0, max_Q_damped = 0.0;
    double tv_A_elastic = 0.0, tv_A_damped = 0.0;
};

// The inlet-pulse setup on 800 cells to t = 0.4 s, run with a purely elastic
// wall and again with a viscoelastic wall; damping must shrink both the flow
// peak and the total variation of A.
DampingCompare study_wall_damping();

struct RelaxationRow {
    double epsilon = 0.0;
    double deviation = 0.0;  // relative L1 distance of Q from the limit run
};

// Finite-relaxation-rate runs of the 200-cell inlet pulse against the limit
// scheme at the same fixed speed and CFL; the deviation must vanish with
// epsilon.
std::vector<RelaxationRow> study_relaxation_limit(const std::vector<double>& epsilons);

}  // namespace hemo

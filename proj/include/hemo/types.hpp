#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace hemo {

// All quantities are CGS: lengths cm, areas cm^2, flow cm^3/s, pressure
// dyne/cm^2, density g/cm^3, viscosity poise.

// Wall and fluid parameters of one vessel segment. beta is the stiffness
// coefficient of the tube law p = Pext + beta*(sqrt(A) - sqrt(A0)); it is
// either supplied directly or derived from the wall data (E, h0, nu).
struct VesselParams {
    double A0 = 0.0;      // reference (unstressed) cross-section, cm^2
    double beta = 0.0;    // tube-law stiffness, dyne/cm^3
    double rho = 0.0;     // blood density, g/cm^3
    double alpha = 1.0;   // momentum correction coefficient, >= 1
    double mu = 0.0;      // dynamic viscosity, poise (0 = inviscid)
    double gamma = 0.0;   // viscoelastic wall coefficient (0 = purely elastic)
    double Pext = 0.0;    // external pressure, dyne/cm^2

    // Wall data used to derive beta; zero when beta was given directly.
    double E = 0.0;       // Young modulus, dyne/cm^2
    double h0 = 0.0;      // wall thickness, cm
    double nu = 0.0;      // Poisson ratio
};

// Derives beta = sqrt(pi)*h0*E / ((1 - nu^2)*A0) from the wall data.
VesselParams make_vessel_params(double E, double h0, double nu, double A0,
                                double rho, double alpha = 1.0, double mu = 0.0,
                                double gamma = 0.0, double Pext = 0.0);

// Uses a directly supplied stiffness coefficient.
VesselParams vessel_params_from_beta(double beta, double A0, double rho,
                                     double alpha = 1.0, double mu = 0.0,
                                     double gamma = 0.0, double Pext = 0.0);

// Throws std::invalid_argument naming the offending field if any invariant is
// violated (A0, beta, rho > 0; alpha >= 1; mu, gamma >= 0).
void validate(const VesselParams& p);

// Velocity profile exponent psi = (2 - alpha)/(alpha - 1); defined only for
// alpha in (1, 2). Throws std::domain_error at alpha = 1 (flat profile).
double profile_exponent(const VesselParams& p);

// Uniform cell-centered grid on [x_left, x_left + length].
struct Grid {
    double x_left = 0.0;
    double length = 0.0;
    std::size_t n_cells = 0;

    double dx() const { return length / static_cast<double>(n_cells); }
    double cell_center(std::size_t i) const {
        return x_left + (static_cast<double>(i) + 0.5) * dx();
    }
};

void validate(const Grid& g);

// Which pair of unknowns an edge evolves. Flow: U = (A, Q). Velocity:
// U = (A, u), valid only for alpha = 1 (the velocity form is conservative
// only there).
enum class ModelForm { Flow, Velocity };

// Discrete state of one edge: the conserved pair and its relaxation flux
// variable V. In the limit scheme V == F(U) after every step; in the
// finite-epsilon scheme V evolves independently.
struct EdgeState {
    ModelForm form = ModelForm::Flow;
    std::vector<double> A;   // cross-section per cell
    std::vector<double> Q;   // flow (Flow form) or velocity (Velocity form)
    std::vector<double> VA;  // relaxation variable, A-component
    std::vector<double> VQ;  // relaxation variable, Q/u-component

    std::size_t size() const { return A.size(); }
};

// Creates a state with V initialized to F(U).
EdgeState make_edge_state(ModelForm form, const VesselParams& p,
                          std::vector<double> A, std::vector<double> Q);

// Pointwise state (U, V) at an edge endpoint: what a boundary law or a
// junction solve produces, and what the boundary interface flux is built
// from. Q holds the velocity for Velocity-form edges.
struct PointState {
    double A = 0.0;
    double Q = 0.0;
    double VA = 0.0;
    double VQ = 0.0;
};

// How the relaxation speed lambda is chosen each step.
struct LambdaPolicy {
    enum class Kind {
        MinimalPerStep,  // max over all cells of |char speeds|, refreshed per step
        FixedGlobal,     // user-supplied constant, still asserted against the bound
    };
    Kind kind = Kind::MinimalPerStep;
    double value = 0.0;  // used by FixedGlobal

    static LambdaPolicy minimal_per_step() { return {Kind::MinimalPerStep, 0.0}; }
    static LambdaPolicy fixed(double lambda) { return {Kind::FixedGlobal, lambda}; }
};

struct RunSettings {
    double cfl = 1.0;            // in (0, 1]
    int scheme_order = 1;        // 1 = LF-type, 2 = MUSCL
    double epsilon = 0.0;        // relaxation rate; 0 selects the limit scheme
    LambdaPolicy lambda_policy = LambdaPolicy::minimal_per_step();
    double t_end = 0.0;
    std::vector<double> snapshot_times;  // empty = snapshot at t_end only
    // Reproduces the literal printed radicand beta*sqrt(A)/(2*rho*A0) in the
    // non-reflecting boundary relations instead of the consistent
    // beta*sqrt(A)/(2*rho). Comparison aid; off by default.
    bool bc_beta_over_A0 = false;
};

void validate(const RunSettings& s);

}  // namespace hemo

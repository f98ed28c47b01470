#pragma once

#include <array>

#include "hemo/types.hpp"

namespace hemo {

// Tube law p(A) = Pext + beta*(sqrt(A) - sqrt(A0)). Throws std::domain_error
// for A <= 0.
double pressure(const VesselParams& p, double A);

// Inverse of the tube law: A(p) = ((p - Pext)/beta + sqrt(A0))^2. Throws
// std::domain_error when the argument leaves the law's range (A would be <= 0).
double pressure_inverse(const VesselParams& p, double pval);

// Antiderivative term of the conservative pressure contribution:
// P(A) = A0*Pext + integral_{A0}^{A} p(a) da.
double pressure_antiderivative(const VesselParams& p, double A);

// Conservative flux of the (A, Q) system:
// F = (Q, alpha*Q^2/A + (A*p(A) - P(A))/rho).
std::array<double, 2> flux_flow(const VesselParams& p, double A, double Q);

// Conservative flux of the (A, u) system (alpha = 1 only):
// F = (A*u, u^2/2 + p(A)/rho).
std::array<double, 2> flux_velocity(const VesselParams& p, double A, double u);

// Friction source in the Q equation for the power-law velocity profile:
// S_v = -2*pi*mu*(psi + 2)*Q/A. Returns 0 for mu = 0; throws
// std::domain_error for mu > 0 with alpha = 1 (profile exponent undefined).
double viscous_source(const VesselParams& p, double A, double Q);

// Squared elastic wave speed c0^2 = beta*sqrt(A)/(2*rho).
double elastic_celerity_sq(const VesselParams& p, double A);

// Characteristic speeds of the (A, Q) system:
// alpha*Q/A -+ sqrt(alpha*(alpha-1)*(Q/A)^2 + c0^2), returned as {minus, plus}.
std::array<double, 2> char_speeds_flow(const VesselParams& p, double A, double Q);

// Characteristic speeds of the (A, u) system (alpha = 1): u -+ c0.
std::array<double, 2> char_speeds_velocity(const VesselParams& p, double A,
                                           double u);

// Smallest admissible relaxation speed for one cell:
// max(|lambda_minus|, |lambda_plus|).
double lambda_bound(const VesselParams& p, double A, double Q,
                    ModelForm form = ModelForm::Flow);

// Precomputed per-edge coefficients shared by the hot kernels. All deriving
// arithmetic happens once here so scalar and SIMD paths see identical
// constants.
struct FluxCoef {
    double alpha;
    double beta;
    double sqrtA0;    // sqrt(A0)
    double A0;
    double Pext;
    double A0Pext;    // A0*Pext
    double A0_32;     // A0*sqrt(A0)
    double inv_rho;   // 1/rho
    double c_aa1;     // alpha*(alpha-1)
    double bo2r;      // beta/(2*rho), radicand coefficient of c0^2
};

FluxCoef make_flux_coef(const VesselParams& p);

}  // namespace hemo

#include <cmath>

#include "hemo/kernels.hpp"

// Reference kernels. The exact sequence of arithmetic below is the contract:
// SIMD backends replay it operation for operation (same temporaries, no FMA)
// so that their lanes round identically and results match bitwise.

namespace hemo::kernels {
namespace {

constexpr double kTwoThirds = 2.0 / 3.0;

void flux_flow_scalar(const double* A, const double* Q, std::size_t n,
                      const FluxCoef& c, double* VA, double* VQ) {
    for (std::size_t i = 0; i < n; ++i) {
        const double a = A[i];
        const double q = Q[i];
        const double sA = std::sqrt(a);
        const double pr = c.Pext + c.beta * (sA - c.sqrtA0);
        const double t1 = a * sA - c.A0_32;
        const double t2 = a - c.A0;
        const double P = (c.A0Pext + c.Pext * t2) + c.beta * (kTwoThirds * t1 - c.sqrtA0 * t2);
        const double kin = c.alpha * ((q * q) / a);
        VA[i] = q;
        VQ[i] = kin + (a * pr - P) * c.inv_rho;
    }
}

void flux_velocity_scalar(const double* A, const double* u, std::size_t n,
                          const FluxCoef& c, double* VA, double* Vu) {
    for (std::size_t i = 0; i < n; ++i) {
        const double a = A[i];
        const double v = u[i];
        const double sA = std::sqrt(a);
        const double pr = c.Pext + c.beta * (sA - c.sqrtA0);
        VA[i] = a * v;
        Vu[i] = 0.5 * (v * v) + pr * c.inv_rho;
    }
}

void lf_fluxes_scalar(const double* Ug, const double* Vg, std::size_t m,
                      double half_lambda, double* F) {
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const double mid = 0.5 * (Vg[k] + Vg[k + 1]);
        const double jump = Ug[k + 1] - Ug[k];
        F[k] = mid - half_lambda * jump;
    }
}

void char_diffs_scalar(const double* Ug, const double* Vg, std::size_t m,
                       double lambda, double inv2dx, double* dP, double* dM) {
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const double dV = Vg[k + 1] - Vg[k];
        const double lU = lambda * (Ug[k + 1] - Ug[k]);
        dP[k] = (dV + lU) * inv2dx;
        dM[k] = (dV - lU) * inv2dx;
    }
}

void minmod_slopes_scalar(const double* d, std::size_t m, double* s) {
    s[0] = 0.0;
    s[m - 1] = 0.0;
    for (std::size_t g = 1; g + 1 < m; ++g) {
        const double a = d[g - 1];
        const double b = d[g];
        if (a * b > 0.0) {
            s[g] = std::fabs(a) <= std::fabs(b) ? a : b;
        } else {
            s[g] = 0.0;
        }
    }
}

void muscl_add_scalar(const double* sP, const double* sM, std::size_t n_iface,
                      double half_dx, double* F) {
    for (std::size_t k = 0; k < n_iface; ++k) {
        const double t = sP[k] - sM[k + 1];
        F[k] = F[k] + half_dx * t;
    }
}

void cell_update_scalar(double* U, const double* F, std::size_t n, double r) {
    for (std::size_t i = 0; i < n; ++i) {
        const double diff = F[i + 1] - F[i];
        U[i] = U[i] - r * diff;
    }
}

double max_speed_flow_scalar(const double* A, const double* Q, std::size_t n,
                             const FluxCoef& c) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = Q[i] / A[i];
        const double au = c.alpha * u;
        const double rad = c.c_aa1 * (u * u) + c.bo2r * std::sqrt(A[i]);
        const double v = std::fabs(au) + std::sqrt(rad);
        best = best < v ? v : best;
    }
    return best;
}

double max_speed_velocity_scalar(const double* A, const double* u,
                                 std::size_t n, const FluxCoef& c) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = std::fabs(u[i]) + std::sqrt(c.bo2r * std::sqrt(A[i]));
        best = best < v ? v : best;
    }
    return best;
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend b = {
        "scalar",
        flux_flow_scalar,
        flux_velocity_scalar,
        lf_fluxes_scalar,
        char_diffs_scalar,
        minmod_slopes_scalar,
        muscl_add_scalar,
        cell_update_scalar,
        max_speed_flow_scalar,
        max_speed_velocity_scalar,
    };
    return b;
}

}  // namespace hemo::kernels

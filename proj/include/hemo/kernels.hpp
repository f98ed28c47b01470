#pragma once

#include <cstddef>
#include <string_view>

#include "hemo/physics.hpp"

namespace hemo::kernels {

// Hot inner loops of the scheme, expressed over raw arrays so they can be
// vectorized. Every backend must produce results bitwise identical to the
// scalar reference: same operation order, one rounding per written operation,
// no fused multiply-add. The equivalence suite asserts this.

// Ghost-extended convention: cell arrays of length m hold [ghost, cells...,
// ghost]; the m-1 interfaces sit between consecutive entries.

struct Backend {
    const char* name;

    // V = F(U) per cell for the (A, Q) system.
    void (*flux_flow)(const double* A, const double* Q, std::size_t n,
                      const FluxCoef& c, double* VA, double* VQ);

    // V = F(U) per cell for the (A, u) system (alpha = 1).
    void (*flux_velocity)(const double* A, const double* u, std::size_t n,
                          const FluxCoef& c, double* VA, double* Vu);

    // One scalar component of the relaxation LF interface flux:
    // F[k] = (Vg[k] + Vg[k+1])/2 - half_lambda*(Ug[k+1] - Ug[k]), k < m-1.
    void (*lf_fluxes)(const double* Ug, const double* Vg, std::size_t m,
                      double half_lambda, double* F);

    // Characteristic one-sided difference quotients per interface:
    // dP[k] = ((Vg[k+1]-Vg[k]) + lambda*(Ug[k+1]-Ug[k])) * inv2dx,
    // dM[k] = ((Vg[k+1]-Vg[k]) - lambda*(Ug[k+1]-Ug[k])) * inv2dx.
    void (*char_diffs)(const double* Ug, const double* Vg, std::size_t m,
                       double lambda, double inv2dx, double* dP, double* dM);

    // Limited slope per cell from adjacent interface differences:
    // s[g] = minmod(d[g-1], d[g]) for 0 < g < m-1; s[0] = s[m-1] = 0.
    void (*minmod_slopes)(const double* d, std::size_t m, double* s);

    // Second-order correction added onto interface fluxes:
    // F[k] += half_dx*(sP[k] - sM[k+1]).
    void (*muscl_add)(const double* sP, const double* sM, std::size_t n_iface,
                      double half_dx, double* F);

    // Conservative update of one component: U[i] -= r*(F[i+1] - F[i]).
    void (*cell_update)(double* U, const double* F, std::size_t n, double r);

    // max over cells of |alpha*u| + sqrt(alpha*(alpha-1)*u^2 + bo2r*sqrt(A)),
    // u = Q/A: the smallest admissible relaxation speed on this array.
    double (*max_speed_flow)(const double* A, const double* Q, std::size_t n,
                             const FluxCoef& c);

    // Same for the velocity form: max |u| + sqrt(bo2r*sqrt(A)).
    double (*max_speed_velocity)(const double* A, const double* u,
                                 std::size_t n, const FluxCoef& c);
};

// The portable reference implementation.
const Backend& scalar_backend();

// The backend selected for this process: the widest SIMD variant the CPU
// supports, unless overridden. Selection is latched on first use.
const Backend& active();

// Forces a backend by name ("scalar", "avx2", "neon", "auto"). Returns false
// (and leaves the selection unchanged) if the name is unknown or the CPU
// lacks the feature. The HEMO1D_KERNELS environment variable applies the same
// override at startup.
bool select(std::string_view name);

// Names of the variants compiled into this build that the current CPU can run.
// First entry is what "auto" resolves to.
const char* const* available();

}  // namespace hemo::kernels

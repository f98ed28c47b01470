#include <arm_neon.h>

#include <cmath>

#include "hemo/kernels.hpp"

// NEON variants (aarch64): two lanes per iteration, a direct transliteration
// of the AVX2 path with the same operation order and no FMA. A64 vsqrtq/vdivq
// are correctly rounded, so results are bitwise identical to the scalar
// reference.

namespace hemo::kernels {
namespace {

constexpr double kTwoThirds = 2.0 / 3.0;

inline float64x2_t and_mask(float64x2_t x, uint64x2_t mask) {
    return vreinterpretq_f64_u64(vandq_u64(vreinterpretq_u64_f64(x), mask));
}

void flux_flow_neon(const double* A, const double* Q, std::size_t n,
                    const FluxCoef& c, double* VA, double* VQ) {
    const float64x2_t beta = vdupq_n_f64(c.beta);
    const float64x2_t sqrtA0 = vdupq_n_f64(c.sqrtA0);
    const float64x2_t A0 = vdupq_n_f64(c.A0);
    const float64x2_t Pext = vdupq_n_f64(c.Pext);
    const float64x2_t A0Pext = vdupq_n_f64(c.A0Pext);
    const float64x2_t A0_32 = vdupq_n_f64(c.A0_32);
    const float64x2_t inv_rho = vdupq_n_f64(c.inv_rho);
    const float64x2_t alpha = vdupq_n_f64(c.alpha);
    const float64x2_t two_thirds = vdupq_n_f64(kTwoThirds);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t a = vld1q_f64(A + i);
        const float64x2_t q = vld1q_f64(Q + i);
        const float64x2_t sA = vsqrtq_f64(a);
        const float64x2_t pr =
            vaddq_f64(Pext, vmulq_f64(beta, vsubq_f64(sA, sqrtA0)));
        const float64x2_t t1 = vsubq_f64(vmulq_f64(a, sA), A0_32);
        const float64x2_t t2 = vsubq_f64(a, A0);
        const float64x2_t P = vaddq_f64(
            vaddq_f64(A0Pext, vmulq_f64(Pext, t2)),
            vmulq_f64(beta, vsubq_f64(vmulq_f64(two_thirds, t1),
                                      vmulq_f64(sqrtA0, t2))));
        const float64x2_t kin = vmulq_f64(alpha, vdivq_f64(vmulq_f64(q, q), a));
        const float64x2_t vq = vaddq_f64(
            kin, vmulq_f64(vsubq_f64(vmulq_f64(a, pr), P), inv_rho));
        vst1q_f64(VA + i, q);
        vst1q_f64(VQ + i, vq);
    }
    if (i < n) scalar_backend().flux_flow(A + i, Q + i, n - i, c, VA + i, VQ + i);
}

void flux_velocity_neon(const double* A, const double* u, std::size_t n,
                        const FluxCoef& c, double* VA, double* Vu) {
    const float64x2_t beta = vdupq_n_f64(c.beta);
    const float64x2_t sqrtA0 = vdupq_n_f64(c.sqrtA0);
    const float64x2_t Pext = vdupq_n_f64(c.Pext);
    const float64x2_t inv_rho = vdupq_n_f64(c.inv_rho);
    const float64x2_t half = vdupq_n_f64(0.5);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t a = vld1q_f64(A + i);
        const float64x2_t v = vld1q_f64(u + i);
        const float64x2_t sA = vsqrtq_f64(a);
        const float64x2_t pr =
            vaddq_f64(Pext, vmulq_f64(beta, vsubq_f64(sA, sqrtA0)));
        vst1q_f64(VA + i, vmulq_f64(a, v));
        vst1q_f64(Vu + i, vaddq_f64(vmulq_f64(half, vmulq_f64(v, v)),
                                    vmulq_f64(pr, inv_rho)));
    }
    if (i < n)
        scalar_backend().flux_velocity(A + i, u + i, n - i, c, VA + i, Vu + i);
}

void lf_fluxes_neon(const double* Ug, const double* Vg, std::size_t m,
                    double half_lambda, double* F) {
    const std::size_t n_iface = m - 1;
    const float64x2_t half = vdupq_n_f64(0.5);
    const float64x2_t hl = vdupq_n_f64(half_lambda);
    std::size_t k = 0;
    for (; k + 2 <= n_iface; k += 2) {
        const float64x2_t vl = vld1q_f64(Vg + k);
        const float64x2_t vr = vld1q_f64(Vg + k + 1);
        const float64x2_t ul = vld1q_f64(Ug + k);
        const float64x2_t ur = vld1q_f64(Ug + k + 1);
        const float64x2_t mid = vmulq_f64(half, vaddq_f64(vl, vr));
        const float64x2_t jump = vsubq_f64(ur, ul);
        vst1q_f64(F + k, vsubq_f64(mid, vmulq_f64(hl, jump)));
    }
    if (k < n_iface)
        scalar_backend().lf_fluxes(Ug + k, Vg + k, m - k, half_lambda, F + k);
}

void char_diffs_neon(const double* Ug, const double* Vg, std::size_t m,
                     double lambda, double inv2dx, double* dP, double* dM) {
    const std::size_t n_iface = m - 1;
    const float64x2_t lam = vdupq_n_f64(lambda);
    const float64x2_t inv = vdupq_n_f64(inv2dx);
    std::size_t k = 0;
    for (; k + 2 <= n_iface; k += 2) {
        const float64x2_t dV = vsubq_f64(vld1q_f64(Vg + k + 1), vld1q_f64(Vg + k));
        const float64x2_t dU = vsubq_f64(vld1q_f64(Ug + k + 1), vld1q_f64(Ug + k));
        const float64x2_t lU = vmulq_f64(lam, dU);
        vst1q_f64(dP + k, vmulq_f64(vaddq_f64(dV, lU), inv));
        vst1q_f64(dM + k, vmulq_f64(vsubq_f64(dV, lU), inv));
    }
    if (k < n_iface)
        scalar_backend().char_diffs(Ug + k, Vg + k, m - k, lambda, inv2dx,
                                    dP + k, dM + k);
}

void minmod_slopes_neon(const double* d, std::size_t m, double* s) {
    s[0] = 0.0;
    s[m - 1] = 0.0;
    const std::size_t n_inner = m - 2;
    const float64x2_t zero = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= n_inner; j += 2) {
        const float64x2_t a = vld1q_f64(d + j);
        const float64x2_t b = vld1q_f64(d + j + 1);
        const uint64x2_t same = vcgtq_f64(vmulq_f64(a, b), zero);
        const uint64x2_t le = vcleq_f64(vabsq_f64(a), vabsq_f64(b));
        const float64x2_t pick = vbslq_f64(le, a, b);
        vst1q_f64(s + 1 + j, and_mask(pick, same));
    }
    for (; j < n_inner; ++j) {
        const double a = d[j];
        const double b = d[j + 1];
        s[1 + j] = (a * b > 0.0) ? (std::fabs(a) <= std::fabs(b) ? a : b) : 0.0;
    }
}

void muscl_add_neon(const double* sP, const double* sM, std::size_t n_iface,
                    double half_dx, double* F) {
    const float64x2_t h = vdupq_n_f64(half_dx);
    std::size_t k = 0;
    for (; k + 2 <= n_iface; k += 2) {
        const float64x2_t t = vsubq_f64(vld1q_f64(sP + k), vld1q_f64(sM + k + 1));
        const float64x2_t f = vld1q_f64(F + k);
        vst1q_f64(F + k, vaddq_f64(f, vmulq_f64(h, t)));
    }
    if (k < n_iface)
        scalar_backend().muscl_add(sP + k, sM + k, n_iface - k, half_dx, F + k);
}

void cell_update_neon(double* U, const double* F, std::size_t n, double r) {
    const float64x2_t rv = vdupq_n_f64(r);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t diff = vsubq_f64(vld1q_f64(F + i + 1), vld1q_f64(F + i));
        const float64x2_t u = vld1q_f64(U + i);
        vst1q_f64(U + i, vsubq_f64(u, vmulq_f64(rv, diff)));
    }
    if (i < n) scalar_backend().cell_update(U + i, F + i, n - i, r);
}

double max_speed_flow_neon(const double* A, const double* Q, std::size_t n,
                           const FluxCoef& c) {
    const float64x2_t alpha = vdupq_n_f64(c.alpha);
    const float64x2_t c_aa1 = vdupq_n_f64(c.c_aa1);
    const float64x2_t bo2r = vdupq_n_f64(c.bo2r);
    float64x2_t best = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t a = vld1q_f64(A + i);
        const float64x2_t u = vdivq_f64(vld1q_f64(Q + i), a);
        const float64x2_t au = vmulq_f64(alpha, u);
        const float64x2_t rad = vaddq_f64(vmulq_f64(c_aa1, vmulq_f64(u, u)),
                                          vmulq_f64(bo2r, vsqrtq_f64(a)));
        const float64x2_t v = vaddq_f64(vabsq_f64(au), vsqrtq_f64(rad));
        best = vmaxq_f64(best, v);
    }
    double out = vmaxvq_f64(best);
    if (i < n) {
        const double tail = scalar_backend().max_speed_flow(A + i, Q + i, n - i, c);
        out = out < tail ? tail : out;
    }
    return out;
}

double max_speed_velocity_neon(const double* A, const double* u, std::size_t n,
                               const FluxCoef& c) {
    const float64x2_t bo2r = vdupq_n_f64(c.bo2r);
    float64x2_t best = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t a = vld1q_f64(A + i);
        const float64x2_t v = vld1q_f64(u + i);
        const float64x2_t cel = vsqrtq_f64(vmulq_f64(bo2r, vsqrtq_f64(a)));
        best = vmaxq_f64(best, vaddq_f64(vabsq_f64(v), cel));
    }
    double out = vmaxvq_f64(best);
    if (i < n) {
        const double tail =
            scalar_backend().max_speed_velocity(A + i, u + i, n - i, c);
        out = out < tail ? tail : out;
    }
    return out;
}

}  // namespace

const Backend& neon_backend() {
    static const Backend b = {
        "neon",
        flux_flow_neon,
        flux_velocity_neon,
        lf_fluxes_neon,
        char_diffs_neon,
        minmod_slopes_neon,
        muscl_add_neon,
        cell_update_neon,
        max_speed_flow_neon,
        max_speed_velocity_neon,
    };
    return b;
}

}  // namespace hemo::kernels

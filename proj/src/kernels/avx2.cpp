#include <immintrin.h>

#include <cmath>

#include "hemo/kernels.hpp"

// AVX2 variants: four lanes per iteration replaying exactly the scalar
// reference arithmetic (add/sub/mul/div/sqrt only, no FMA), remainder handed
// to the scalar kernels. sqrt and div are correctly rounded in both scalar
// and vector encodings, so results are bitwise identical to the reference.

namespace hemo::kernels {
namespace {

constexpr double kTwoThirds = 2.0 / 3.0;

inline __m256d abs_pd(__m256d x) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    return _mm256_andnot_pd(sign, x);
}

inline double reduce_max(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d m = _mm_max_pd(lo, hi);
    __m128d s = _mm_unpackhi_pd(m, m);
    m = _mm_max_sd(m, s);
    return _mm_cvtsd_f64(m);
}

void flux_flow_avx2(const double* A, const double* Q, std::size_t n,
                    const FluxCoef& c, double* VA, double* VQ) {
    const __m256d beta = _mm256_set1_pd(c.beta);
    const __m256d sqrtA0 = _mm256_set1_pd(c.sqrtA0);
    const __m256d A0 = _mm256_set1_pd(c.A0);
    const __m256d Pext = _mm256_set1_pd(c.Pext);
    const __m256d A0Pext = _mm256_set1_pd(c.A0Pext);
    const __m256d A0_32 = _mm256_set1_pd(c.A0_32);
    const __m256d inv_rho = _mm256_set1_pd(c.inv_rho);
    const __m256d alpha = _mm256_set1_pd(c.alpha);
    const __m256d two_thirds = _mm256_set1_pd(kTwoThirds);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(A + i);
        const __m256d q = _mm256_loadu_pd(Q + i);
        const __m256d sA = _mm256_sqrt_pd(a);
        const __m256d pr = _mm256_add_pd(
            Pext, _mm256_mul_pd(beta, _mm256_sub_pd(sA, sqrtA0)));
        const __m256d t1 = _mm256_sub_pd(_mm256_mul_pd(a, sA), A0_32);
        const __m256d t2 = _mm256_sub_pd(a, A0);
        const __m256d P = _mm256_add_pd(
            _mm256_add_pd(A0Pext, _mm256_mul_pd(Pext, t2)),
            _mm256_mul_pd(beta, _mm256_sub_pd(_mm256_mul_pd(two_thirds, t1),
                                              _mm256_mul_pd(sqrtA0, t2))));
        const __m256d kin =
            _mm256_mul_pd(alpha, _mm256_div_pd(_mm256_mul_pd(q, q), a));
        const __m256d vq = _mm256_add_pd(
            kin,
            _mm256_mul_pd(_mm256_sub_pd(_mm256_mul_pd(a, pr), P), inv_rho));
        _mm256_storeu_pd(VA + i, q);
        _mm256_storeu_pd(VQ + i, vq);
    }
    if (i < n) scalar_backend().flux_flow(A + i, Q + i, n - i, c, VA + i, VQ + i);
}

void flux_velocity_avx2(const double* A, const double* u, std::size_t n,
                        const FluxCoef& c, double* VA, double* Vu) {
    const __m256d beta = _mm256_set1_pd(c.beta);
    const __m256d sqrtA0 = _mm256_set1_pd(c.sqrtA0);
    const __m256d Pext = _mm256_set1_pd(c.Pext);
    const __m256d inv_rho = _mm256_set1_pd(c.inv_rho);
    const __m256d half = _mm256_set1_pd(0.5);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(A + i);
        const __m256d v = _mm256_loadu_pd(u + i);
        const __m256d sA = _mm256_sqrt_pd(a);
        const __m256d pr = _mm256_add_pd(
            Pext, _mm256_mul_pd(beta, _mm256_sub_pd(sA, sqrtA0)));
        _mm256_storeu_pd(VA + i, _mm256_mul_pd(a, v));
        _mm256_storeu_pd(
            Vu + i, _mm256_add_pd(_mm256_mul_pd(half, _mm256_mul_pd(v, v)),
                                  _mm256_mul_pd(pr, inv_rho)));
    }
    if (i < n)
        scalar_backend().flux_velocity(A + i, u + i, n - i, c, VA + i, Vu + i);
}

void lf_fluxes_avx2(const double* Ug, const double* Vg, std::size_t m,
                    double half_lambda, double* F) {
    const std::size_t n_iface = m - 1;
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d hl = _mm256_set1_pd(half_lambda);
    std::size_t k = 0;
    for (; k + 4 <= n_iface; k += 4) {
        const __m256d vl = _mm256_loadu_pd(Vg + k);
        const __m256d vr = _mm256_loadu_pd(Vg + k + 1);
        const __m256d ul = _mm256_loadu_pd(Ug + k);
        const __m256d ur = _mm256_loadu_pd(Ug + k + 1);
        const __m256d mid = _mm256_mul_pd(half, _mm256_add_pd(vl, vr));
        const __m256d jump = _mm256_sub_pd(ur, ul);
        _mm256_storeu_pd(F + k, _mm256_sub_pd(mid, _mm256_mul_pd(hl, jump)));
    }
    if (k < n_iface)
        scalar_backend().lf_fluxes(Ug + k, Vg + k, m - k, half_lambda, F + k);
}

void char_diffs_avx2(const double* Ug, const double* Vg, std::size_t m,
                     double lambda, double inv2dx, double* dP, double* dM) {
    const std::size_t n_iface = m - 1;
    const __m256d lam = _mm256_set1_pd(lambda);
    const __m256d inv = _mm256_set1_pd(inv2dx);
    std::size_t k = 0;
    for (; k + 4 <= n_iface; k += 4) {
        const __m256d dV = _mm256_sub_pd(_mm256_loadu_pd(Vg + k + 1),
                                         _mm256_loadu_pd(Vg + k));
        const __m256d dU = _mm256_sub_pd(_mm256_loadu_pd(Ug + k + 1),
                                         _mm256_loadu_pd(Ug + k));
        const __m256d lU = _mm256_mul_pd(lam, dU);
        _mm256_storeu_pd(dP + k, _mm256_mul_pd(_mm256_add_pd(dV, lU), inv));
        _mm256_storeu_pd(dM + k, _mm256_mul_pd(_mm256_sub_pd(dV, lU), inv));
    }
    if (k < n_iface)
        scalar_backend().char_diffs(Ug + k, Vg + k, m - k, lambda, inv2dx,
                                    dP + k, dM + k);
}

void minmod_slopes_avx2(const double* d, std::size_t m, double* s) {
    s[0] = 0.0;
    s[m - 1] = 0.0;
    const std::size_t n_inner = m - 2;  // cells 1 .. m-2
    const __m256d zero = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n_inner; j += 4) {
        const __m256d a = _mm256_loadu_pd(d + j);
        const __m256d b = _mm256_loadu_pd(d + j + 1);
        const __m256d same = _mm256_cmp_pd(_mm256_mul_pd(a, b), zero, _CMP_GT_OQ);
        const __m256d pick =
            _mm256_blendv_pd(b, a, _mm256_cmp_pd(abs_pd(a), abs_pd(b), _CMP_LE_OQ));
        _mm256_storeu_pd(s + 1 + j, _mm256_and_pd(pick, same));
    }
    for (; j < n_inner; ++j) {
        const double a = d[j];
        const double b = d[j + 1];
        s[1 + j] = (a * b > 0.0) ? (std::fabs(a) <= std::fabs(b) ? a : b) : 0.0;
    }
}

void muscl_add_avx2(const double* sP, const double* sM, std::size_t n_iface,
                    double half_dx, double* F) {
    const __m256d h = _mm256_set1_pd(half_dx);
    std::size_t k = 0;
    for (; k + 4 <= n_iface; k += 4) {
        const __m256d t = _mm256_sub_pd(_mm256_loadu_pd(sP + k),
                                        _mm256_loadu_pd(sM + k + 1));
        const __m256d f = _mm256_loadu_pd(F + k);
        _mm256_storeu_pd(F + k, _mm256_add_pd(f, _mm256_mul_pd(h, t)));
    }
    if (k < n_iface)
        scalar_backend().muscl_add(sP + k, sM + k, n_iface - k, half_dx, F + k);
}

void cell_update_avx2(double* U, const double* F, std::size_t n, double r) {
    const __m256d rv = _mm256_set1_pd(r);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(F + i + 1),
                                           _mm256_loadu_pd(F + i));
        const __m256d u = _mm256_loadu_pd(U + i);
        _mm256_storeu_pd(U + i, _mm256_sub_pd(u, _mm256_mul_pd(rv, diff)));
    }
    if (i < n) scalar_backend().cell_update(U + i, F + i, n - i, r);
}

double max_speed_flow_avx2(const double* A, const double* Q, std::size_t n,
                           const FluxCoef& c) {
    const __m256d alpha = _mm256_set1_pd(c.alpha);
    const __m256d c_aa1 = _mm256_set1_pd(c.c_aa1);
    const __m256d bo2r = _mm256_set1_pd(c.bo2r);
    __m256d best = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(A + i);
        const __m256d u = _mm256_div_pd(_mm256_loadu_pd(Q + i), a);
        const __m256d au = _mm256_mul_pd(alpha, u);
        const __m256d rad =
            _mm256_add_pd(_mm256_mul_pd(c_aa1, _mm256_mul_pd(u, u)),
                          _mm256_mul_pd(bo2r, _mm256_sqrt_pd(a)));
        const __m256d v = _mm256_add_pd(abs_pd(au), _mm256_sqrt_pd(rad));
        best = _mm256_max_pd(best, v);
    }
    double out = reduce_max(best);
    if (i < n) {
        const double tail = scalar_backend().max_speed_flow(A + i, Q + i, n - i, c);
        out = out < tail ? tail : out;
    }
    return out;
}

double max_speed_velocity_avx2(const double* A, const double* u, std::size_t n,
                               const FluxCoef& c) {
    const __m256d bo2r = _mm256_set1_pd(c.bo2r);
    __m256d best = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(A + i);
        const __m256d v = _mm256_loadu_pd(u + i);
        const __m256d cel =
            _mm256_sqrt_pd(_mm256_mul_pd(bo2r, _mm256_sqrt_pd(a)));
        best = _mm256_max_pd(best, _mm256_add_pd(abs_pd(v), cel));
    }
    double out = reduce_max(best);
    if (i < n) {
        const double tail =
            scalar_backend().max_speed_velocity(A + i, u + i, n - i, c);
        out = out < tail ? tail : out;
    }
    return out;
}

}  // namespace

const Backend& avx2_backend() {
    static const Backend b = {
        "avx2",
        flux_flow_avx2,
        flux_velocity_avx2,
        lf_fluxes_avx2,
        char_diffs_avx2,
        minmod_slopes_avx2,
        muscl_add_avx2,
        cell_update_avx2,
        max_speed_flow_avx2,
        max_speed_velocity_avx2,
    };
    return b;
}

}  // namespace hemo::kernels

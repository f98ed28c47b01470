#include <algorithm>
#include <array>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "hemo/kernels.hpp"
#include "hemo/physics.hpp"

using namespace hemo;

namespace {

struct Arrays {
    std::vector<double> A, Q, u;
};

Arrays random_arrays(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> area(0.5, 20.0);
    std::uniform_real_distribution<double> flow(-2000.0, 2000.0);
    std::uniform_real_distribution<double> vel(-400.0, 400.0);
    Arrays a;
    a.A.reserve(n);
    for (std::size_t i = 0; i < n; ++i) a.A.push_back(area(rng));
    for (std::size_t i = 0; i < n; ++i) a.Q.push_back(flow(rng));
    for (std::size_t i = 0; i < n; ++i) a.u.push_back(vel(rng));
    return a;
}

bool bits_equal(const std::vector<double>& x, const std::vector<double>& y) {
    return x.size() == y.size() &&
           std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) == 0;
}

// Runs every backend operation on the same inputs and demands bitwise equal
// outputs. Lengths straddle the vector width so the tail paths are covered.
void check_backend_pair(const kernels::Backend& ref, const kernels::Backend& alt,
                        std::size_t n, unsigned seed) {
    const VesselParams pf =
        make_vessel_params(2.43e6, 0.26, 0.5, 6.6, 1.06, 1.3);
    const VesselParams pv = make_vessel_params(2.43e6, 0.26, 0.5, 6.6, 1.06);
    const FluxCoef cf = make_flux_coef(pf);
    const FluxCoef cv = make_flux_coef(pv);
    const Arrays in = random_arrays(n, seed);

    std::vector<double> r1(n), r2(n), s1(n), s2(n);
    ref.flux_flow(in.A.data(), in.Q.data(), n, cf, r1.data(), r2.data());
    alt.flux_flow(in.A.data(), in.Q.data(), n, cf, s1.data(), s2.data());
    CHECK(bits_equal(r1, s1));
    CHECK(bits_equal(r2, s2));

    ref.flux_velocity(in.A.data(), in.u.data(), n, cv, r1.data(), r2.data());
    alt.flux_velocity(in.A.data(), in.u.data(), n, cv, s1.data(), s2.data());
    CHECK(bits_equal(r1, s1));
    CHECK(bits_equal(r2, s2));

    if (n >= 2) {
        const std::size_t m = n;  // treat the arrays as ghost-extended
        std::vector<double> Fr(m - 1), Fa(m - 1);
        ref.lf_fluxes(in.A.data(), in.Q.data(), m, 260.0, Fr.data());
        alt.lf_fluxes(in.A.data(), in.Q.data(), m, 260.0, Fa.data());
        CHECK(bits_equal(Fr, Fa));

        std::vector<double> dPr(m - 1), dMr(m - 1), dPa(m - 1), dMa(m - 1);
        ref.char_diffs(in.A.data(), in.Q.data(), m, 525.0, 0.5 / 0.25, dPr.data(),
                       dMr.data());
        alt.char_diffs(in.A.data(), in.Q.data(), m, 525.0, 0.5 / 0.25, dPa.data(),
                       dMa.data());
        CHECK(bits_equal(dPr, dPa));
        CHECK(bits_equal(dMr, dMa));

        std::vector<double> slr(m), sla(m);
        ref.minmod_slopes(dPr.data(), m, slr.data());
        alt.minmod_slopes(dPr.data(), m, sla.data());
        CHECK(bits_equal(slr, sla));

        std::vector<double> Fr2 = Fr, Fa2 = Fa;
        ref.muscl_add(slr.data(), slr.data(), m - 1, 0.125, Fr2.data());
        alt.muscl_add(slr.data(), slr.data(), m - 1, 0.125, Fa2.data());
        CHECK(bits_equal(Fr2, Fa2));
    }

    if (n >= 2) {
        std::vector<double> Ur = in.Q, Ua = in.Q;
        // interfaces = cells + 1 is the real layout; reuse A as a flux array
        std::vector<double> F(in.A.begin(), in.A.end());
        F.push_back(1.0);
        ref.cell_update(Ur.data(), F.data(), n, 0.4);
        alt.cell_update(Ua.data(), F.data(), n, 0.4);
        CHECK(bits_equal(Ur, Ua));
    }

    const double mr = ref.max_speed_flow(in.A.data(), in.Q.data(), n, cf);
    const double ma = alt.max_speed_flow(in.A.data(), in.Q.data(), n, cf);
    CHECK(std::memcmp(&mr, &ma, sizeof(double)) == 0);

    const double vr = ref.max_speed_velocity(in.A.data(), in.u.data(), n, cv);
    const double va = alt.max_speed_velocity(in.A.data(), in.u.data(), n, cv);
    CHECK(std::memcmp(&vr, &va, sizeof(double)) == 0);
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar backend matches the public physics routines") {
    const VesselParams p = make_vessel_params(2.43e6, 0.26, 0.5, 6.6, 1.06, 1.2);
    const FluxCoef c = make_flux_coef(p);
    const Arrays in = random_arrays(64, 11);
    std::vector<double> VA(64), VQ(64);
    kernels::scalar_backend().flux_flow(in.A.data(), in.Q.data(), 64, c, VA.data(),
                                        VQ.data());
    for (std::size_t i = 0; i < 64; ++i) {
        const std::array<double, 2> f = flux_flow(p, in.A[i], in.Q[i]);
        CHECK(VA[i] == doctest::Approx(f[0]).epsilon(1e-14));
        CHECK(VQ[i] == doctest::Approx(f[1]).epsilon(1e-14));
    }
    const double m =
        kernels::scalar_backend().max_speed_flow(in.A.data(), in.Q.data(), 64, c);
    double expect = 0.0;
    for (std::size_t i = 0; i < 64; ++i)
        expect = std::max(expect, lambda_bound(p, in.A[i], in.Q[i]));
    CHECK(m == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("scalar interface flux follows the documented formula") {
    const Arrays in = random_arrays(33, 23);
    const std::size_t m = 33;
    std::vector<double> F(m - 1);
    const double hl = 261.8;
    kernels::scalar_backend().lf_fluxes(in.A.data(), in.Q.data(), m, hl, F.data());
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const double expect =
            (in.Q[k] + in.Q[k + 1]) / 2 - hl * (in.A[k + 1] - in.A[k]);
        CHECK(F[k] == doctest::Approx(expect).epsilon(1e-15));
    }
}

TEST_CASE("every available backend is bitwise equal to scalar") {
    const kernels::Backend& ref = kernels::scalar_backend();
    for (const char* const* name = kernels::available(); *name; ++name) {
        CAPTURE(*name);
        REQUIRE(kernels::select(*name));
        const kernels::Backend& alt = kernels::active();
        CHECK(std::string(alt.name) == *name);
        for (std::size_t n : {std::size_t{1},  std::size_t{2},  std::size_t{3},
                              std::size_t{4},  std::size_t{5},  std::size_t{7},
                              std::size_t{8},  std::size_t{15}, std::size_t{16},
                              std::size_t{17}, std::size_t{64}, std::size_t{101},
                              std::size_t{1024}}) {
            check_backend_pair(ref, alt, n, 1000 + static_cast<unsigned>(n));
        }
    }
    kernels::select("auto");
}

TEST_CASE("unknown backend names are rejected without side effects") {
    const std::string before = kernels::active().name;
    CHECK_FALSE(kernels::select("altivec"));
    CHECK(std::string(kernels::active().name) == before);
}

}  // TEST_SUITE

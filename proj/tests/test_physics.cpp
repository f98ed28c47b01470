#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "hemo/physics.hpp"

using namespace hemo;

namespace {

VesselParams aorta() { return make_vessel_params(2.43e6, 0.26, 0.5, 6.6, 1.06); }

// Composite Simpson quadrature, the independent check for the closed-form
// antiderivative.
template <class F>
double simpson(F&& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

}  // namespace

TEST_SUITE("physics") {

TEST_CASE("stiffness coefficient derived from wall data") {
    const VesselParams p = aorta();
    CHECK(p.beta == doctest::Approx(226229.564).epsilon(1e-6));
    // Direct-beta construction must agree.
    const VesselParams q = vessel_params_from_beta(p.beta, 6.6, 1.06);
    CHECK(q.beta == p.beta);
    CHECK(q.E == 0.0);
}

TEST_CASE("tube law fixes the rest state") {
    const VesselParams p = aorta();
    CHECK(pressure(p, p.A0) == doctest::Approx(p.Pext));
    VesselParams shifted = p;
    shifted.Pext = 1.0e4;
    CHECK(pressure(shifted, p.A0) == doctest::Approx(1.0e4));
}

TEST_CASE("pressure inverse round trip") {
    const VesselParams p = aorta();
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> area(0.5, 20.0);
    for (int i = 0; i < 200; ++i) {
        const double A = area(rng);
        CHECK(pressure_inverse(p, pressure(p, A)) == doctest::Approx(A).epsilon(1e-12));
    }
}

TEST_CASE("tube law domain errors") {
    const VesselParams p = aorta();
    CHECK_THROWS_AS(pressure(p, 0.0), std::domain_error);
    CHECK_THROWS_AS(pressure(p, -1.0), std::domain_error);
    // Below the vacuum pressure no positive area exists.
    const double p_vacuum = p.Pext - p.beta * std::sqrt(p.A0);
    CHECK_THROWS_AS(pressure_inverse(p, p_vacuum - 1.0), std::domain_error);
}

TEST_CASE("antiderivative matches quadrature") {
    VesselParams p = aorta();
    p.Pext = 3.0e3;
    for (double A : {1.2, 4.0, 6.6, 9.5, 18.0}) {
        const double ref = p.A0 * p.Pext +
                           simpson([&](double a) { return pressure(p, a); }, p.A0, A, 4000);
        CHECK(pressure_antiderivative(p, A) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("rest state carries zero flux") {
    VesselParams p = aorta();
    p.Pext = 2.5e3;
    const std::array<double, 2> f = flux_flow(p, p.A0, 0.0);
    CHECK(f[0] == 0.0);
    CHECK(f[1] == doctest::Approx(0.0).epsilon(1e-14));
    const std::array<double, 2> fv = flux_velocity(p, p.A0, 0.0);
    CHECK(fv[0] == 0.0);
    CHECK(fv[1] == doctest::Approx(p.Pext / p.rho));
}

TEST_CASE("flux components against the definitions") {
    VesselParams p = aorta();
    p.alpha = 1.3;
    const double A = 5.1, Q = 310.0;
    const std::array<double, 2> f = flux_flow(p, A, Q);
    CHECK(f[0] == Q);
    const double expect = p.alpha * Q * Q / A +
                          (A * pressure(p, A) - pressure_antiderivative(p, A)) / p.rho;
    CHECK(f[1] == doctest::Approx(expect).epsilon(1e-14));

    VesselParams pv = aorta();
    const double u = 42.0;
    const std::array<double, 2> fv = flux_velocity(pv, A, u);
    CHECK(fv[0] == A * u);
    CHECK(fv[1] == doctest::Approx(0.5 * u * u + pressure(pv, A) / pv.rho).epsilon(1e-14));
}

TEST_CASE("characteristic speeds are the flux Jacobian eigenvalues") {
    VesselParams p = aorta();
    p.alpha = 1.25;
    const double A = 7.2, Q = 850.0;
    // Central-difference Jacobian of F(A, Q).
    const double hA = 1e-6 * A, hQ = 1e-6 * std::max(std::fabs(Q), 1.0);
    std::array<std::array<double, 2>, 2> J{};
    for (int c = 0; c < 2; ++c) {
        const double dA = c == 0 ? hA : 0.0, dQ = c == 1 ? hQ : 0.0;
        const std::array<double, 2> fp = flux_flow(p, A + dA, Q + dQ);
        const std::array<double, 2> fm = flux_flow(p, A - dA, Q - dQ);
        const double h = c == 0 ? hA : hQ;
        J[0][c] = (fp[0] - fm[0]) / (2 * h);
        J[1][c] = (fp[1] - fm[1]) / (2 * h);
    }
    const double tr = J[0][0] + J[1][1];
    const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    const double disc = std::sqrt(tr * tr / 4 - det);
    const std::array<double, 2> lam = char_speeds_flow(p, A, Q);
    CHECK(lam[0] == doctest::Approx(tr / 2 - disc).epsilon(1e-5));
    CHECK(lam[1] == doctest::Approx(tr / 2 + disc).epsilon(1e-5));
}

TEST_CASE("velocity-form speeds are u -+ c") {
    const VesselParams p = aorta();
    const double A = 6.6, u = 120.0;
    const double c = std::sqrt(elastic_celerity_sq(p, A));
    const std::array<double, 2> lam = char_speeds_velocity(p, A, u);
    CHECK(lam[0] == doctest::Approx(u - c));
    CHECK(lam[1] == doctest::Approx(u + c));
}

TEST_CASE("rest celerity of the reference vessel") {
    // sqrt(beta*sqrt(A0)/(2 rho)) with the default wall data, a fixed datum.
    const VesselParams p = aorta();
    CHECK(std::sqrt(elastic_celerity_sq(p, p.A0)) ==
          doctest::Approx(523.59).epsilon(1e-4));
}

TEST_CASE("lambda bound dominates both speeds") {
    VesselParams p = aorta();
    p.alpha = 1.4;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> area(1.0, 15.0), flow(-2000.0, 2000.0);
    for (int i = 0; i < 200; ++i) {
        const double A = area(rng), Q = flow(rng);
        const std::array<double, 2> lam = char_speeds_flow(p, A, Q);
        const double b = lambda_bound(p, A, Q);
        CHECK(b == doctest::Approx(std::max(std::fabs(lam[0]), std::fabs(lam[1]))));
        CHECK(b >= std::fabs(lam[0]));
        CHECK(b >= std::fabs(lam[1]));
    }
}

TEST_CASE("friction source closed form") {
    VesselParams p = aorta();
    CHECK(viscous_source(p, 4.0, 1000.0) == 0.0);  // inviscid

    // psi = 2 corresponds to alpha = 4/3; the datum -8 comes from
    // circumference times wall shear for the power-law profile.
    VesselParams pv = vessel_params_from_beta(2.0e5, M_PI, 1.0, 4.0 / 3.0, 1.0);
    CHECK(profile_exponent(pv) == doctest::Approx(2.0));
    CHECK(viscous_source(pv, M_PI, 1.0) == doctest::Approx(-8.0));

    VesselParams flat = vessel_params_from_beta(2.0e5, M_PI, 1.0, 1.0, 1.0);
    CHECK_THROWS_AS(viscous_source(flat, M_PI, 1.0), std::domain_error);
    CHECK_THROWS_AS(profile_exponent(flat), std::domain_error);
}

TEST_CASE("parameter validation names the field") {
    VesselParams p = aorta();
    p.A0 = 0.0;
    CHECK_THROWS_WITH_AS(validate(p), doctest::Contains("A0"), std::invalid_argument);
    p = aorta();
    p.rho = -1.0;
    CHECK_THROWS_WITH_AS(validate(p), doctest::Contains("rho"), std::invalid_argument);
    p = aorta();
    p.alpha = 0.9;
    CHECK_THROWS_WITH_AS(validate(p), doctest::Contains("alpha"), std::invalid_argument);
    p = aorta();
    p.gamma = -2.0;
    CHECK_THROWS_WITH_AS(validate(p), doctest::Contains("gamma"), std::invalid_argument);
}

TEST_CASE("flux coefficients mirror the parameters") {
    VesselParams p = aorta();
    p.alpha = 1.2;
    p.Pext = 900.0;
    const FluxCoef c = make_flux_coef(p);
    CHECK(c.alpha == p.alpha);
    CHECK(c.beta == p.beta);
    CHECK(c.sqrtA0 == doctest::Approx(std::sqrt(p.A0)));
    CHECK(c.A0Pext == doctest::Approx(p.A0 * p.Pext));
    CHECK(c.inv_rho == doctest::Approx(1.0 / p.rho));
    CHECK(c.c_aa1 == doctest::Approx(p.alpha * (p.alpha - 1.0)));
    CHECK(c.bo2r == doctest::Approx(p.beta / (2.0 * p.rho)));
}

}  // TEST_SUITE

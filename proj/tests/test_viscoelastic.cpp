#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "hemo/physics.hpp"
#include "hemo/viscoelastic.hpp"

using namespace hemo;

namespace {

// Residual of the backward-Euler diffusion equation the solver claims to
// solve, with the ghost cells closed as requested.
double solve_residual(const std::vector<double>& q, const std::vector<double>& qhat,
                      const std::vector<double>& D, double dt, double dx,
                      const DiffusionClosure& left, const DiffusionClosure& right) {
    const std::size_t n = q.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ghost_l =
            left.kind == DiffusionClosure::Kind::Mirror ? q[0] : left.value;
        const double ghost_r =
            right.kind == DiffusionClosure::Kind::Mirror ? q[n - 1] : right.value;
        const double qm = i == 0 ? ghost_l : q[i - 1];
        const double qp = i + 1 == n ? ghost_r : q[i + 1];
        const double lap = (qp - 2.0 * q[i] + qm) / (dx * dx);
        worst = std::max(worst, std::fabs(q[i] - dt * D[i] * lap - qhat[i]));
    }
    return worst;
}

std::vector<double> random_field(std::size_t n, unsigned seed, double lo, double hi) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = d(rng);
    return v;
}

double total_variation(const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) s += std::fabs(v[i] - v[i - 1]);
    return s;
}

}  // namespace

TEST_SUITE("viscoelastic") {

TEST_CASE("solution satisfies the implicit equation") {
    const std::size_t n = 37;
    const std::vector<double> qhat = random_field(n, 3, -500.0, 500.0);
    const std::vector<double> D = random_field(n, 4, 0.1, 30.0);
    const double dt = 2.4e-4, dx = 0.5;
    for (auto closures : {std::pair{DiffusionClosure::mirror(), DiffusionClosure::mirror()},
                          std::pair{DiffusionClosure::dirichlet(120.0),
                                    DiffusionClosure::mirror()},
                          std::pair{DiffusionClosure::dirichlet(-80.0),
                                    DiffusionClosure::dirichlet(40.0)}}) {
        const std::vector<double> q =
            implicit_diffusion_solve(qhat, D, dt, dx, closures.first, closures.second);
        REQUIRE(q.size() == n);
        CHECK(solve_residual(q, qhat, D, dt, dx, closures.first, closures.second) <
              1e-9);
    }
}

TEST_CASE("constant data is invariant under mirror closures") {
    const std::size_t n = 25;
    const std::vector<double> qhat(n, 77.5);
    const std::vector<double> D = random_field(n, 5, 0.5, 50.0);
    const std::vector<double> q =
        implicit_diffusion_solve(qhat, D, 1.0e-2, 0.25, DiffusionClosure::mirror(),
                                 DiffusionClosure::mirror());
    for (double v : q) CHECK(v == doctest::Approx(77.5).epsilon(1e-13));
}

TEST_CASE("discrete maximum principle, any time step") {
    const std::size_t n = 50;
    const std::vector<double> qhat = random_field(n, 6, -900.0, 900.0);
    const std::vector<double> D = random_field(n, 7, 0.1, 80.0);
    const double lo = *std::min_element(qhat.begin(), qhat.end());
    const double hi = *std::max_element(qhat.begin(), qhat.end());
    for (double dt : {1.0e-5, 1.0e-2, 10.0, 1.0e4}) {
        const std::vector<double> q =
            implicit_diffusion_solve(qhat, D, dt, 0.4, DiffusionClosure::mirror(),
                                     DiffusionClosure::mirror());
        for (double v : q) {
            CHECK(v >= lo - 1e-9);
            CHECK(v <= hi + 1e-9);
        }
    }
}

TEST_CASE("diffusion does not create variation") {
    const std::size_t n = 60;
    const std::vector<double> qhat = random_field(n, 8, -300.0, 300.0);
    const std::vector<double> D = random_field(n, 9, 1.0, 20.0);
    const std::vector<double> q =
        implicit_diffusion_solve(qhat, D, 5.0e-3, 0.3, DiffusionClosure::mirror(),
                                 DiffusionClosure::mirror());
    CHECK(total_variation(q) <= total_variation(qhat) + 1e-10);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(implicit_diffusion_solve({1.0, 2.0}, {1.0}, 1e-3, 0.5,
                                             DiffusionClosure::mirror(),
                                             DiffusionClosure::mirror()),
                    std::invalid_argument);
    CHECK_THROWS_AS(implicit_diffusion_solve({1.0}, {-2.0}, 1e-3, 0.5,
                                             DiffusionClosure::mirror(),
                                             DiffusionClosure::mirror()),
                    std::invalid_argument);
    CHECK_THROWS_AS(implicit_diffusion_solve({1.0}, {2.0}, 1e-3, 0.0,
                                             DiffusionClosure::mirror(),
                                             DiffusionClosure::mirror()),
                    std::invalid_argument);
    CHECK(implicit_diffusion_solve({}, {}, 1e-3, 0.5, DiffusionClosure::mirror(),
                                   DiffusionClosure::mirror())
              .empty());
}

TEST_CASE("wall correction: elastic wall is untouched") {
    VesselParams p = make_vessel_params(2.43e6, 0.26, 0.5, 6.6, 1.06);
    const Grid g{0.0, 10.0, 20};
    EdgeState st = make_edge_state(ModelForm::Flow, p,
                                   random_field(20, 10, 5.0, 8.0),
                                   random_field(20, 11, -200.0, 200.0));
    const EdgeState before = st;
    viscoelastic_step(st, p, g, 1e-4, before.A, DiffusionClosure::mirror(),
                      DiffusionClosure::mirror());
    CHECK(st.Q == before.Q);
    CHECK(st.VA == before.VA);
}

TEST_CASE("wall correction: damps Q, keeps A, refreshes the flux variable") {
    VesselParams p = make_vessel_params(2.43e6, 0.26, 0.5, 6.6, 1.06, 1.0, 0.0,
                                        5.0e3);
    const Grid g{0.0, 10.0, 40};
    EdgeState st = make_edge_state(ModelForm::Flow, p,
                                   random_field(40, 12, 5.0, 8.0),
                                   random_field(40, 13, -400.0, 400.0));
    const EdgeState before = st;
    viscoelastic_step(st, p, g, 2e-4, before.A, DiffusionClosure::mirror(),
                      DiffusionClosure::mirror());

    CHECK(st.A == before.A);
    CHECK(total_variation(st.Q) < total_variation(before.Q));
    for (std::size_t i = 0; i < st.size(); ++i) {
        const std::array<double, 2> f = flux_flow(p, st.A[i], st.Q[i]);
        CHECK(st.VA[i] == f[0]);
        CHECK(st.VQ[i] == doctest::Approx(f[1]).epsilon(1e-14));
    }

    // The correction must agree with the standalone solve at the documented
    // per-cell diffusivity.
    const double scale = p.gamma * std::sqrt(M_PI) / (2.0 * p.rho * std::pow(p.A0, 1.5));
    std::vector<double> D(st.size());
    for (std::size_t i = 0; i < D.size(); ++i) D[i] = scale * before.A[i];
    const std::vector<double> ref =
        implicit_diffusion_solve(before.Q, D, 2e-4, g.dx(), DiffusionClosure::mirror(),
                                 DiffusionClosure::mirror());
    for (std::size_t i = 0; i < st.size(); ++i)
        CHECK(st.Q[i] == doctest::Approx(ref[i]).epsilon(1e-13));
}

TEST_CASE("velocity-form states are rejected") {
    VesselParams p = make_vessel_params(2.43e6, 0.26, 0.5, 6.6, 1.06, 1.0, 0.0,
                                        1.0e3);
    const Grid g{0.0, 5.0, 10};
    EdgeState st = make_edge_state(ModelForm::Velocity, p,
                                   random_field(10, 14, 5.0, 8.0),
                                   random_field(10, 15, -50.0, 50.0));
    CHECK_THROWS_AS(viscoelastic_step(st, p, g, 1e-4, st.A,
                                      DiffusionClosure::mirror(),
                                      DiffusionClosure::mirror()),
                    std::invalid_argument);
}

}  // TEST_SUITE

#include <array>
#include <cmath>
#include <random>

#include "doctest.h"
#include "hemo/coupling.hpp"
#include "hemo/errors.hpp"
#include "hemo/physics.hpp"

using namespace hemo;

namespace {

VesselParams wide(double alpha = 1.0) {
    return make_vessel_params(2.43e6, 0.26, 0.5, 8.25, 1.06, alpha);
}
VesselParams narrow(double alpha = 1.0) {
    return make_vessel_params(2.43e6, 0.26, 0.5, 4.95, 1.06, alpha);
}

PointState flow_trace(const VesselParams& p, std::mt19937& rng, double vshift) {
    std::uniform_real_distribution<double> ar(0.85, 1.15);
    std::uniform_real_distribution<double> ur(-0.25, 0.25);
    std::uniform_real_distribution<double> pert(-vshift, vshift);
    const double A = ar(rng) * p.A0;
    const double c = std::sqrt(elastic_celerity_sq(p, A));
    const double Q = ur(rng) * c * A;
    const auto F = flux_flow(p, A, Q);
    return PointState{A, Q, F[0] + pert(rng) * c * A, F[1] + pert(rng) * c * c * A};
}

double trace_lambda(const PointState& a, const PointState& b, const VesselParams& pa,
                    const VesselParams& pb) {
    return 1.5 * std::max(lambda_bound(pa, a.A, a.Q), lambda_bound(pb, b.A, b.Q));
}

// The four matching conditions, re-derived from scratch: flow and
// total-pressure continuity of the junction unknowns, equality of the mass
// fluxes both edges will see, and total-pressure continuity written through
// the momentum fluxes. All scaled the same way the solver reports them.
std::array<double, 4> residuals(const PointState& tN, const PointState& t1,
                                const VesselParams& pin, const VesselParams& pout,
                                double lam, const JunctionStates11& s) {
    const double A_L = s.parent.A, Q_L = s.parent.Q;
    const double A_R = s.child.A, Q_R = s.child.Q;
    const double Abar = 0.5 * (tN.A + t1.A);
    const double rbar = 0.5 * (pin.rho + pout.rho);
    const double ptL =
        pin.alpha * pin.rho / 2.0 * (Q_L / A_L) * (Q_L / A_L) + pressure(pin, A_L);
    const double ptR =
        pout.alpha * pout.rho / 2.0 * (Q_R / A_R) * (Q_R / A_R) + pressure(pout, A_R);
    auto pimod = [](double fQ, double A, double Q, const VesselParams& p) {
        return fQ - p.alpha * Q * Q / (2.0 * A) + pressure_antiderivative(p, A) / p.rho;
    };
    const double fQpar = tN.VQ + lam * tN.Q - lam * Q_L;
    const double fQch = t1.VQ - lam * t1.Q + lam * Q_R;
    return {
        (Q_L - Q_R) / (lam * Abar),
        (ptL - ptR) / (rbar * lam * lam),
        ((tN.VA + lam * (tN.A - A_L)) - (t1.VA - lam * (t1.A - A_R))) / (lam * Abar),
        (pin.rho * (A_R / A_L) * pimod(fQpar, A_L, Q_L, pin) -
         pout.rho * pimod(fQch, A_R, Q_R, pout)) /
            (rbar * lam * lam * Abar),
    };
}

double iface_flux_A(const PointState& l, const PointState& r, double lam) {
    return 0.5 * (l.VA + r.VA) - 0.5 * lam * (r.A - l.A);
}
double iface_flux_Q(const PointState& l, const PointState& r, double lam) {
    return 0.5 * (l.VQ + r.VQ) - 0.5 * lam * (r.Q - l.Q);
}

}  // namespace

TEST_SUITE("coupling") {

TEST_CASE("total pressure in both state conventions") {
    const VesselParams p = wide(1.2);
    const PointState sf{7.0, 280.0, 0.0, 0.0};
    const double u = 280.0 / 7.0;
    CHECK(total_pressure(sf, p, ModelForm::Flow) ==
          doctest::Approx(1.2 * 1.06 / 2 * u * u + pressure(p, 7.0)).epsilon(1e-13));
    const VesselParams pv = wide();
    const PointState sv{7.0, 40.0, 0.0, 0.0};
    CHECK(total_pressure(sv, pv, ModelForm::Velocity) ==
          doctest::Approx(1.06 / 2 * 40.0 * 40.0 + pressure(pv, 7.0)).epsilon(1e-13));
}

TEST_CASE("a junction between identical vessels reproduces the unsplit flux") {
    const VesselParams p = wide();
    std::mt19937 rng(321);
    for (int trial = 0; trial < 40; ++trial) {
        const PointState tN = flow_trace(p, rng, 0.0);
        const PointState t1 = flow_trace(p, rng, 0.0);
        const double lam = trace_lambda(tN, t1, p, p);
        const JunctionStates11 s = couple_one_to_one(tN, t1, p, p, lam);

        const double fA = iface_flux_A(tN, t1, lam);
        const double fQ = iface_flux_Q(tN, t1, lam);
        const double sA = lam * 0.5 * (tN.A + t1.A);
        const double sQ = lam * sA;
        CHECK(std::fabs(iface_flux_A(tN, s.parent, lam) - fA) <= 1e-9 * sA);
        CHECK(std::fabs(iface_flux_A(s.child, t1, lam) - fA) <= 1e-9 * sA);
        CHECK(std::fabs(iface_flux_Q(tN, s.parent, lam) - fQ) <= 1e-9 * sQ);
        CHECK(std::fabs(iface_flux_Q(s.child, t1, lam) - fQ) <= 1e-9 * sQ);
    }
}

TEST_CASE("reduction and direct solves agree and satisfy the conditions") {
    std::mt19937 rng(654);
    for (int trial = 0; trial < 120; ++trial) {
        const VesselParams pin = trial % 2 ? wide() : wide(1.1);
        const VesselParams pout = trial % 2 ? narrow() : narrow(1.1);
        const PointState tN = flow_trace(pin, rng, 0.02);
        const PointState t1 = flow_trace(pout, rng, 0.02);
        const double lam = trace_lambda(tN, t1, pin, pout);

        const JunctionStates11 a = couple_one_to_one(tN, t1, pin, pout, lam);
        const JunctionStates11 b = couple_one_to_one_newton(tN, t1, pin, pout, lam);

        const double Abar = 0.5 * (tN.A + t1.A);
        CHECK(std::fabs(a.parent.A - b.parent.A) <= 1e-8 * Abar);
        CHECK(std::fabs(a.child.A - b.child.A) <= 1e-8 * Abar);
        CHECK(std::fabs(a.parent.Q - b.parent.Q) <= 1e-8 * lam * Abar);
        CHECK(std::fabs(a.child.Q - b.child.Q) <= 1e-8 * lam * Abar);

        for (const JunctionStates11& s : {a, b})
            for (double r : residuals(tN, t1, pin, pout, lam, s))
                CHECK(std::fabs(r) <= 1e-9);
    }
}

TEST_CASE("junction states stay on each edge's outgoing characteristic") {
    std::mt19937 rng(987);
    const VesselParams pin = wide(), pout = narrow();
    const PointState tN = flow_trace(pin, rng, 0.01);
    const PointState t1 = flow_trace(pout, rng, 0.01);
    const double lam = trace_lambda(tN, t1, pin, pout);
    const JunctionStates11 s = couple_one_to_one(tN, t1, pin, pout, lam);
    const double vs = lam * lam * 0.5 * (tN.A + t1.A);
    CHECK(std::fabs(s.parent.VA - (tN.VA - lam * (s.parent.A - tN.A))) <= 1e-12 * vs);
    CHECK(std::fabs(s.parent.VQ - (tN.VQ - lam * (s.parent.Q - tN.Q))) <= 1e-12 * vs);
    CHECK(std::fabs(s.child.VA - (t1.VA + lam * (s.child.A - t1.A))) <= 1e-12 * vs);
    CHECK(std::fabs(s.child.VQ - (t1.VQ + lam * (s.child.Q - t1.Q))) <= 1e-12 * vs);
}

TEST_CASE("a resting node stays at rest") {
    const VesselParams pin = wide(), pout = narrow();
    auto rest = [](const VesselParams& p) {
        return PointState{p.A0, 0.0, 0.0, 0.0};  // the flux of a rest state vanishes
    };
    const double lam = 700.0;
    for (auto solve : {couple_one_to_one, couple_one_to_one_newton}) {
        const JunctionStates11 s = solve(rest(pin), rest(pout), pin, pout, lam);
        CHECK(s.parent.A == doctest::Approx(pin.A0).epsilon(1e-11));
        CHECK(s.child.A == doctest::Approx(pout.A0).epsilon(1e-11));
        CHECK(std::fabs(s.parent.Q) <= 1e-8);
        CHECK(std::fabs(s.child.Q) <= 1e-8);
    }
}

TEST_CASE("velocity-form junction matches the unsplit flux on identical vessels") {
    const VesselParams p = wide();
    std::mt19937 rng(135);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_real_distribution<double> ar(0.9, 1.1);
        std::uniform_real_distribution<double> ur(-80.0, 80.0);
        auto vtrace = [&]() {
            const double A = ar(rng) * p.A0;
            const double u = ur(rng);
            const auto F = flux_velocity(p, A, u);
            return PointState{A, u, F[0], F[1]};
        };
        const PointState tN = vtrace(), t1 = vtrace();
        const double lam =
            1.5 * std::max(lambda_bound(p, tN.A, tN.Q, ModelForm::Velocity),
                           lambda_bound(p, t1.A, t1.Q, ModelForm::Velocity));
        const JunctionStates11 s = couple_one_to_one_velocity(tN, t1, p, p, lam);
        const double sA = lam * 0.5 * (tN.A + t1.A);
        CHECK(std::fabs(iface_flux_A(tN, s.parent, lam) - iface_flux_A(tN, t1, lam)) <=
              1e-8 * sA);
        CHECK(std::fabs(iface_flux_A(s.child, t1, lam) - iface_flux_A(tN, t1, lam)) <=
              1e-8 * sA);
        CHECK(std::fabs(iface_flux_Q(tN, s.parent, lam) - iface_flux_Q(tN, t1, lam)) <=
              1e-8 * lam * lam);
        CHECK(std::fabs(iface_flux_Q(s.child, t1, lam) - iface_flux_Q(tN, t1, lam)) <=
              1e-8 * lam * lam);
    }
}

TEST_CASE("branch solve splits the flow and balances the node") {
    std::mt19937 rng(246);
    const VesselParams pin = wide();
    const VesselParams c1 = narrow();
    const VesselParams c2 = make_vessel_params(2.43e6, 0.26, 0.5, 3.3, 1.06);
    for (int trial = 0; trial < 30; ++trial) {
        const PointState tN = flow_trace(pin, rng, 0.01);
        const PointState t1 = flow_trace(c1, rng, 0.01);
        const PointState t2 = flow_trace(c2, rng, 0.01);
        double lam = trace_lambda(tN, t1, pin, c1);
        lam = std::max(lam, 1.5 * lambda_bound(c2, t2.A, t2.Q));
        const JunctionStates12 s = couple_one_to_two(tN, t1, t2, pin, c1, c2, lam);

        const double Abar = (tN.A + t1.A + t2.A) / 3.0;
        CHECK(std::fabs(s.parent.Q - s.child1.Q - s.child2.Q) <= 1e-8 * lam * Abar);
        const double ptp = total_pressure(s.parent, pin, ModelForm::Flow);
        const double sc = pin.rho * lam * lam;
        CHECK(std::fabs(ptp - total_pressure(s.child1, c1, ModelForm::Flow)) <= 1e-8 * sc);
        CHECK(std::fabs(ptp - total_pressure(s.child2, c2, ModelForm::Flow)) <= 1e-8 * sc);
        const double node = iface_flux_A(tN, s.parent, lam) -
                            iface_flux_A(s.child1, t1, lam) -
                            iface_flux_A(s.child2, t2, lam);
        CHECK(std::fabs(node) <= 1e-9 * lam * Abar);
    }
}

TEST_CASE("branch solve with twin children is symmetric") {
    std::mt19937 rng(468);
    const VesselParams pin = wide(), ch = narrow();
    const PointState tN = flow_trace(pin, rng, 0.0);
    const PointState tc = flow_trace(ch, rng, 0.0);
    const JunctionStates12 s =
        couple_one_to_two(tN, tc, tc, pin, ch, ch, trace_lambda(tN, tc, pin, ch));
    CHECK(s.child1.A == doctest::Approx(s.child2.A).epsilon(1e-9));
    CHECK(s.child1.Q == doctest::Approx(s.child2.Q).epsilon(1e-9).scale(
                            std::fabs(s.parent.Q) + 1.0));
    CHECK(s.parent.Q == doctest::Approx(2.0 * s.child1.Q)
                            .epsilon(1e-9)
                            .scale(std::fabs(s.parent.Q) + 1.0));
}

TEST_CASE("defect reports read the traces directly") {
    const VesselParams pin = wide(), pout = narrow();
    const PointState a{7.0, 300.0, 0.0, 0.0};
    const PointState b{5.0, 260.0, 0.0, 0.0};
    const CouplingErrors e = coupling_errors_11(a, b, pin, pout, ModelForm::Flow);
    CHECK(e.flow == doctest::Approx(40.0));
    CHECK(e.total_pressure ==
          doctest::Approx(std::fabs(total_pressure(a, pin, ModelForm::Flow) -
                                    total_pressure(b, pout, ModelForm::Flow))));
    const CouplingErrors e2 =
        coupling_errors_12(a, b, b, pin, pout, pout, ModelForm::Flow);
    CHECK(e2.flow == doctest::Approx(std::fabs(300.0 - 2 * 260.0)));
}

TEST_CASE("impossible junction data is rejected") {
    const VesselParams p = wide();
    const double lam = 700.0;
    // Outgoing invariants forcing a nonpositive combined area.
    const PointState tN{6.6, 0.0, -2.0 * lam * 6.6, 0.0};
    const PointState t1{6.6, 0.0, 2.0 * lam * 6.6, 0.0};
    CHECK_THROWS_WITH_AS(couple_one_to_one(tN, t1, p, p, lam),
                         doctest::Contains("positivity"), SolverError);
}

}  // TEST_SUITE

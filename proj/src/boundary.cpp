#include "hemo/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hemo/errors.hpp"
#include "hemo/physics.hpp"
#include "hemo/rootfind.hpp"

namespace hemo {
namespace {

// Characteristic radicand entering the boundary relations. The alternate
// convention divides by A0, which changes only how boundary data couple to
// the interior, not the interior scheme itself.
double bc_rad(const VesselParams& p, double A, bool beta_over_A0) {
    double r = p.beta * std::sqrt(A) / (2.0 * p.rho);
    if (beta_over_A0) r /= p.A0;
    return r;
}

double side_sign(Side side) { return side == Side::Left ? 1.0 : -1.0; }

// Roots Q of  W - (T + alpha*G/A)*Q = sgn * sqrt(alpha*(alpha-1)*(Q/A)^2 + c0sq) * G.
// Squaring gives a quadratic; roots are re-checked against the unsquared
// equation to drop the artifact branch.
std::vector<double> tangential_roots(double W, double T, double G, double A,
                                     double alpha, double c0sq, double sgn) {
    const double am1 = alpha * (alpha - 1.0);
    const double b1 = T + alpha * G / A;
    const double qa = b1 * b1 - am1 * (G / A) * (G / A);
    const double qb = -2.0 * W * b1;
    const double qc = W * W - c0sq * G * G;

    std::vector<double> all;
    const double ascale = std::fabs(b1 * b1) + std::fabs(am1 * (G / A) * (G / A));
    if (std::fabs(qa) <= 1e-14 * ascale) {
        if (qb != 0.0) all.push_back(-qc / qb);
    } else if (qb == 0.0) {
        const double v = -qc / qa;
        if (v >= 0.0) {
            all.push_back(std::sqrt(v));
            all.push_back(-std::sqrt(v));
        }
    } else {
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc < 0.0) {
            // Tangency to rounding: keep the double root.
            if (disc > -1e-12 * qb * qb) all.push_back(-qb / (2.0 * qa));
        } else {
            const double sd = std::sqrt(disc);
            const double qq = -0.5 * (qb + (qb > 0.0 ? sd : -sd));
            all.push_back(qq / qa);
            all.push_back(qc / qq);
        }
    }

    std::vector<double> ok;
    for (double Q : all) {
        const double lhs = W - b1 * Q;
        const double rhs = sgn * std::sqrt(am1 * (Q / A) * (Q / A) + c0sq) * G;
        const double scale = std::fabs(W) + std::fabs(b1 * Q) + std::fabs(rhs) + 1e-300;
        if (std::fabs(lhs - rhs) <= 1e-6 * scale) ok.push_back(Q);
    }
    return ok.empty() ? all : ok;
}

double pick_closest(const std::vector<double>& roots, double target) {
    if (roots.empty()) throw SolverError("no admissible boundary state for imposed datum");
    double best = roots[0];
    for (double r : roots)
        if (std::fabs(r - target) < std::fabs(best - target)) best = r;
    return best;
}

PointState close_state(Side side, const PointState& trace, double A_b, double Q_b,
                       double lambda) {
    if (!(A_b > 0.0))
        throw SolverError("boundary cross-section became nonpositive");
    const auto V = laxcurve_V(side, trace, A_b, Q_b, lambda);
    return PointState{A_b, Q_b, V[0], V[1]};
}

// Geometrically expands [lo, hi] around the trace until f changes sign, then
// hands over to the safeguarded Newton. scale sets the residual tolerance.
template <class F>
double solve_area(F&& f, double x0, double scale, const char* what) {
    double lo = std::max(1e-12, 0.25 * x0);
    double hi = 4.0 * x0;
    for (int k = 0; k < 8; ++k) {
        const double flo = f(lo);
        const double fhi = f(hi);
        if (std::isfinite(flo) && std::isfinite(fhi) &&
            ((flo <= 0.0 && fhi >= 0.0) || (flo >= 0.0 && fhi <= 0.0)))
            break;
        lo *= 0.25;
        hi *= 4.0;
    }
    const double ftol = 1e-12 * std::max(1.0, scale);
    const auto r = newton_bisect(f, x0, lo, hi, ftol, 100);
    if (!r.converged) throw SolverError(std::string("boundary solve failed: ") + what);
    return r.x;
}

}  // namespace

TimeFunction TimeFunction::constant(double value) {
    TimeFunction f;
    f.kind_ = Kind::Constant;
    f.a_ = value;
    return f;
}

TimeFunction TimeFunction::sinusoidal(double amplitude, double frequency) {
    TimeFunction f;
    f.kind_ = Kind::Sinusoidal;
    f.a_ = amplitude;
    f.b_ = frequency;
    return f;
}

TimeFunction TimeFunction::tabulated(std::vector<double> times, std::vector<double> values) {
    if (times.empty() || times.size() != values.size())
        throw ConfigError("tabulated datum needs matching, nonempty time and value lists");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw ConfigError("tabulated datum times must be strictly increasing");
    TimeFunction f;
    f.kind_ = Kind::Tabulated;
    f.times_ = std::move(times);
    f.values_ = std::move(values);
    return f;
}

double TimeFunction::operator()(double t) const {
    switch (kind_) {
        case Kind::Constant:
            return a_;
        case Kind::Sinusoidal:
            return a_ * std::sin(2.0 * M_PI * b_ * t);
        case Kind::Tabulated: {
            if (t <= times_.front()) return values_.front();
            if (t >= times_.back()) return values_.back();
            const auto it = std::upper_bound(times_.begin(), times_.end(), t);
            const std::size_t i = static_cast<std::size_t>(it - times_.begin());
            const double w = (t - times_[i - 1]) / (times_[i] - times_[i - 1]);
            return values_[i - 1] + w * (values_[i] - values_[i - 1]);
        }
    }
    return a_;
}

EdgeTraces edge_traces(const EdgeState& st, Side side) {
    const std::size_t n = st.size();
    const std::size_t i1 = side == Side::Left ? 0 : n - 1;
    const std::size_t i2 =
        n > 1 ? (side == Side::Left ? 1 : n - 2) : i1;
    EdgeTraces tr;
    tr.c1 = PointState{st.A[i1], st.Q[i1], st.VA[i1], st.VQ[i1]};
    tr.c2 = PointState{st.A[i2], st.Q[i2], st.VA[i2], st.VQ[i2]};
    return tr;
}

std::array<double, 2> laxcurve_V(Side side, const PointState& trace, double A_b,
                                 double Q_b, double lambda) {
    const double s = side_sign(side);
    return {trace.VA + s * lambda * (A_b - trace.A),
            trace.VQ + s * lambda * (Q_b - trace.Q)};
}

double laxcurve_residual(Side side, const PointState& trace, const PointState& bstate,
                         double lambda) {
    const auto V = laxcurve_V(side, trace, bstate.A, bstate.Q, lambda);
    return std::max(std::fabs(V[0] - bstate.VA), std::fabs(V[1] - bstate.VQ));
}

PointState boundary_neumann(const EdgeTraces& tr, Side side) {
    (void)side;
    return tr.c1;
}

PointState boundary_nonreflecting(const EdgeTraces& tr, Side side, double lambda) {
    return close_state(side, tr.c1, tr.c1.A, tr.c1.Q, lambda);
}

PointState boundary_from_pressure(double p_b, const EdgeTraces& tr, Side side,
                                  double lambda, const VesselParams& p, ModelForm form,
                                  int order, bool beta_over_A0) {
    const double A_b = pressure_inverse(p, p_b);
    const PointState& t1 = tr.c1;

    if (form == ModelForm::Velocity) {
        const double cA = std::sqrt(bc_rad(p, A_b, beta_over_A0));
        const double u_b = t1.Q - side_sign(side) * (cA / A_b) * (t1.A - A_b);
        return close_state(side, t1, A_b, u_b, lambda);
    }

    double W, T, G;
    if (order >= 2) {
        const double dVQ = side == Side::Left ? t1.VQ - tr.c2.VQ : tr.c2.VQ - t1.VQ;
        const double dVA = side == Side::Left ? t1.VA - tr.c2.VA : tr.c2.VA - t1.VA;
        W = 3.0 * lambda * t1.Q + dVQ;
        T = 3.0 * lambda;
        G = 3.0 * lambda * (t1.A - A_b) + dVA;
    } else {
        W = t1.Q;
        T = 1.0;
        G = t1.A - A_b;
    }
    const double c0sq = bc_rad(p, A_b, beta_over_A0);
    const auto roots = tangential_roots(W, T, G, A_b, p.alpha, c0sq, side_sign(side));
    const double Q_b = pick_closest(roots, t1.Q);
    return close_state(side, t1, A_b, Q_b, lambda);
}

PointState boundary_from_velocity(double u_b, const EdgeTraces& tr, Side side,
                                  double lambda, const VesselParams& p, ModelForm form,
                                  bool beta_over_A0) {
    const PointState& t1 = tr.c1;
    const double s = side_sign(side);
    const double am1 = p.alpha * (p.alpha - 1.0);

    if (form == ModelForm::Velocity) {
        auto g = [&](double A) {
            const double cA = std::sqrt(bc_rad(p, A, beta_over_A0));
            return (t1.Q - u_b) - s * (cA / A) * (t1.A - A);
        };
        const double scale = std::fabs(t1.Q) + std::sqrt(bc_rad(p, p.A0, beta_over_A0));
        const double A_b = solve_area(g, t1.A, scale, "imposed velocity");
        return close_state(side, t1, A_b, u_b, lambda);
    }

    auto g = [&](double A) {
        const double mu = p.alpha * u_b +
                          s * std::sqrt(am1 * u_b * u_b + bc_rad(p, A, beta_over_A0));
        return (t1.Q - A * u_b) - mu * (t1.A - A);
    };
    const double scale = std::fabs(t1.Q) + std::fabs(t1.A * u_b) +
                         p.A0 * std::sqrt(bc_rad(p, p.A0, beta_over_A0));
    const double A_b = solve_area(g, t1.A, scale, "imposed velocity");
    return close_state(side, t1, A_b, A_b * u_b, lambda);
}

PointState boundary_from_flow(double q_b, const EdgeTraces& tr, Side side,
                              double lambda, const VesselParams& p, ModelForm form,
                              bool beta_over_A0) {
    const PointState& t1 = tr.c1;
    const double s = side_sign(side);
    const double am1 = p.alpha * (p.alpha - 1.0);

    if (form == ModelForm::Velocity) {
        auto g = [&](double A) {
            const double cA = std::sqrt(bc_rad(p, A, beta_over_A0));
            return (t1.Q - q_b / A) - s * (cA / A) * (t1.A - A);
        };
        const double scale = std::fabs(t1.Q) + std::sqrt(bc_rad(p, p.A0, beta_over_A0));
        const double A_b = solve_area(g, t1.A, scale, "imposed flow");
        return close_state(side, t1, A_b, q_b / A_b, lambda);
    }

    auto g = [&](double A) {
        const double u = q_b / A;
        const double mu =
            p.alpha * u + s * std::sqrt(am1 * u * u + bc_rad(p, A, beta_over_A0));
        return (t1.Q - q_b) - mu * (t1.A - A);
    };
    const double scale = std::fabs(t1.Q) + std::fabs(q_b) +
                         p.A0 * std::sqrt(bc_rad(p, p.A0, beta_over_A0));
    const double A_b = solve_area(g, t1.A, scale, "imposed flow");
    return close_state(side, t1, A_b, q_b, lambda);
}

PointState boundary_reflecting(const EdgeTraces& tr, Side side, double lambda) {
    const PointState& t1 = tr.c1;
    const double A_b = t1.A - side_sign(side) * t1.VA / lambda;
    return close_state(side, t1, A_b, 0.0, lambda);
}

namespace {

PointState nonreflecting_order2(const EdgeTraces& tr, Side side, double lambda,
                                const VesselParams& p, ModelForm form,
                                bool beta_over_A0) {
    const PointState& t1 = tr.c1;
    if (form == ModelForm::Velocity)
        return close_state(side, t1, t1.A, t1.Q, lambda);
    const double dVQ = side == Side::Left ? t1.VQ - tr.c2.VQ : tr.c2.VQ - t1.VQ;
    const double dVA = side == Side::Left ? t1.VA - tr.c2.VA : tr.c2.VA - t1.VA;
    const double W = 3.0 * lambda * t1.Q + dVQ;
    const double T = 3.0 * lambda;
    const double G = dVA;
    const double c0sq = bc_rad(p, t1.A, beta_over_A0);
    const auto roots = tangential_roots(W, T, G, t1.A, p.alpha, c0sq, side_sign(side));
    return close_state(side, t1, t1.A, pick_closest(roots, t1.Q), lambda);
}

}  // namespace

bool valve_is_open(const BoundarySpec& spec, double t) {
    const ValveSchedule& v = spec.valve;
    if (v.period > 0.0) {
        double s = std::fmod(t - v.phase, v.period);
        if (s < 0.0) s += v.period;
        return s < v.open_fraction * v.period;
    }
    return spec.datum(t) > 0.0;
}

PointState boundary_state(const BoundarySpec& spec, double t, const EdgeTraces& tr,
                          Side side, double lambda, const VesselParams& p,
                          ModelForm form, int order, bool beta_over_A0) {
    switch (spec.kind) {
        case BoundarySpec::Kind::Neumann:
            return boundary_neumann(tr, side);
        case BoundarySpec::Kind::NonReflecting:
            return boundary_nonreflecting(tr, side, lambda);
        case BoundarySpec::Kind::NonReflectingOrder2:
            return nonreflecting_order2(tr, side, lambda, p, form, beta_over_A0);
        case BoundarySpec::Kind::PrescribedPressure:
            return boundary_from_pressure(spec.datum(t), tr, side, lambda, p, form,
                                          order, beta_over_A0);
        case BoundarySpec::Kind::PrescribedVelocity:
            return boundary_from_velocity(spec.datum(t), tr, side, lambda, p, form,
                                          beta_over_A0);
        case BoundarySpec::Kind::PrescribedFlow:
            return boundary_from_flow(spec.datum(t), tr, side, lambda, p, form,
                                      beta_over_A0);
        case BoundarySpec::Kind::Reflecting:
            return boundary_reflecting(tr, side, lambda);
        case BoundarySpec::Kind::HeartValve:
            if (valve_is_open(spec, t))
                return boundary_from_pressure(spec.datum(t), tr, side, lambda, p, form,
                                              order, beta_over_A0);
            return boundary_from_velocity(0.0, tr, side, lambda, p, form, beta_over_A0);
    }
    throw ConfigError("unknown boundary kind");
}

}  // namespace hemo

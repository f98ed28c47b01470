#pragma once

#include <array>
#include <vector>

#include "hemo/types.hpp"

namespace hemo {

// Scalar datum imposed at a boundary, evaluated at the current time.
class TimeFunction {
  public:
    static TimeFunction constant(double value);
    // amplitude * sin(2*pi*frequency*t)
    static TimeFunction sinusoidal(double amplitude, double frequency);
    // Piecewise-linear interpolation of (t, value) samples, clamped outside
    // the sampled range. Times must be strictly increasing.
    static TimeFunction tabulated(std::vector<double> times, std::vector<double> values);

    double operator()(double t) const;

  private:
    TimeFunction() = default;
    enum class Kind { Constant, Sinusoidal, Tabulated };
    Kind kind_ = Kind::Constant;
    double a_ = 0.0;
    double b_ = 0.0;
    std::vector<double> times_;
    std::vector<double> values_;
};

// Valve gate: by default the valve is open while the imposed pressure is
// positive; a periodic schedule (period > 0) overrides that and opens the
// valve for the leading open_fraction of each period, shifted by phase.
struct ValveSchedule {
    double period = 0.0;
    double open_fraction = 0.0;
    double phase = 0.0;
};

struct BoundarySpec {
    enum class Kind {
        Neumann,
        NonReflecting,
        NonReflectingOrder2,
        PrescribedPressure,
        PrescribedVelocity,
        PrescribedFlow,
        Reflecting,
        HeartValve,
    };
    Kind kind = Kind::Neumann;
    TimeFunction datum = TimeFunction::constant(0.0);
    ValveSchedule valve;
};

enum class Side { Left, Right };

// Interior data a boundary law may read: the adjacent cell c1 and, for the
// wider second-order relation, the next cell in c2.
struct EdgeTraces {
    PointState c1;
    PointState c2;
};

EdgeTraces edge_traces(const EdgeState& st, Side side);

// All boundary states satisfy the straight-line compatibility relation
//   left:  V_b - V_1 = lambda (U_b - U_1)
//   right: V_N - V_b = lambda (U_N - U_b)
// so the interface flux built from them never injects a spurious wave into
// the domain. laxcurve_V closes a chosen U_b along that line; the residual
// helper measures how far a state is from it (used by tests).
std::array<double, 2> laxcurve_V(Side side, const PointState& trace,
                                 double A_b, double Q_b, double lambda);
double laxcurve_residual(Side side, const PointState& trace,
                         const PointState& bstate, double lambda);

PointState boundary_neumann(const EdgeTraces& tr, Side side);
PointState boundary_nonreflecting(const EdgeTraces& tr, Side side, double lambda);

// Outgoing-characteristic closures for an imposed datum. order == 2 uses the
// wider relation coupling the two cells nearest the boundary; velocity and
// flow data always use the adjacent-cell relation.
PointState boundary_from_pressure(double p_b, const EdgeTraces& tr, Side side,
                                  double lambda, const VesselParams& p, ModelForm form,
                                  int order, bool beta_over_A0);
PointState boundary_from_velocity(double u_b, const EdgeTraces& tr, Side side,
                                  double lambda, const VesselParams& p, ModelForm form,
                                  bool beta_over_A0);
PointState boundary_from_flow(double q_b, const EdgeTraces& tr, Side side,
                              double lambda, const VesselParams& p, ModelForm form,
                              bool beta_over_A0);

// Closed end with zero interface mass flux: A_b = A_1 -/+ V_1^A / lambda and
// Q_b = 0 make the first flux component vanish identically, so the enclosed
// volume is conserved to rounding.
PointState boundary_reflecting(const EdgeTraces& tr, Side side, double lambda);

PointState boundary_state(const BoundarySpec& spec, double t, const EdgeTraces& tr,
                          Side side, double lambda, const VesselParams& p,
                          ModelForm form, int order, bool beta_over_A0);

// Valve gate state at time t (only meaningful for HeartValve specs).
bool valve_is_open(const BoundarySpec& spec, double t);

}  // namespace hemo

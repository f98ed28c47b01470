#include "hemo/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "hemo/coupling.hpp"
#include "hemo/errors.hpp"
#include "hemo/physics.hpp"
#include "hemo/viscoelastic.hpp"

namespace hemo {
namespace {

DiffusionClosure damping_closure(const BoundarySpec& bc, double t,
                                 const PointState& bstate) {
    using K = BoundarySpec::Kind;
    switch (bc.kind) {
        case K::PrescribedFlow:
        case K::PrescribedVelocity:
        case K::Reflecting:
            // The hyperbolic boundary state carries the imposed flow.
            return DiffusionClosure::dirichlet(bstate.Q);
        case K::HeartValve:
            if (!valve_is_open(bc, t)) return DiffusionClosure::dirichlet(0.0);
            return DiffusionClosure::mirror();
        default:
            return DiffusionClosure::mirror();
    }
}

}  // namespace

Network::Network(std::vector<Edge> edges_in, std::vector<Junction> junctions_in,
                 RunSettings settings_in)
    : edges(std::move(edges_in)),
      junctions(std::move(junctions_in)),
      settings(std::move(settings_in)) {
    const int n = static_cast<int>(edges.size());
    for (const auto& j : junctions) {
        if (j.parent >= 0 && j.parent < n) edges[j.parent].right_is_junction = true;
        if (j.child1 >= 0 && j.child1 < n) edges[j.child1].left_is_junction = true;
        if (j.kind == Junction::Kind::OneToTwo && j.child2 >= 0 && j.child2 < n)
            edges[j.child2].left_is_junction = true;
    }
}

void Network::validate() const {
    if (edges.empty()) throw ConfigError("network needs at least one edge");
    std::set<int> ids;
    for (const auto& e : edges) {
        if (!ids.insert(e.id).second)
            throw ConfigError("duplicate edge id " + std::to_string(e.id));
        hemo::validate(e.params);
        hemo::validate(e.grid);
        if (e.state.size() != e.grid.n_cells)
            throw ConfigError("edge state does not match its grid");
        if (e.state.form != e.form)
            throw ConfigError("edge state form mismatch");
        if (e.form == ModelForm::Velocity && e.params.alpha != 1.0)
            throw ConfigError("velocity-form edges require alpha = 1");
        if (e.params.gamma > 0.0 && e.form != ModelForm::Flow)
            throw ConfigError("viscoelastic wall requires the flow form");
    }
    hemo::validate(settings);
    if (settings.epsilon > 0.0 && settings.scheme_order != 1)
        throw ConfigError("finite relaxation rate runs use the first-order scheme");

    const int n = static_cast<int>(edges.size());
    std::set<std::pair<int, int>> used;  // (edge, side 0=left/1=right)
    auto claim = [&](int e, int side) {
        if (e < 0 || e >= n) throw ConfigError("junction references an unknown edge");
        if (!used.insert({e, side}).second)
            throw ConfigError("edge end attached to more than one junction");
    };
    for (const auto& j : junctions) {
        claim(j.parent, 1);
        claim(j.child1, 0);
        const ModelForm form = edges[j.parent].form;
        if (edges[j.child1].form != form)
            throw ConfigError("edges meeting at a junction must share one form");
        if (j.kind == Junction::Kind::OneToTwo) {
            claim(j.child2, 0);
            if (edges[j.child2].form != form)
                throw ConfigError("edges meeting at a junction must share one form");
            if (form != ModelForm::Flow)
                throw ConfigError("branching junctions require the flow form");
        } else if (j.child2 >= 0) {
            throw ConfigError("one-to-one junction with a second child");
        }
    }
}

double Network::wave_speed_bound() const {
    double m = 0.0;
    for (const auto& e : edges) m = std::max(m, max_wave_speed(e.state, e.params));
    return m;
}

double Network::cfl_dt(double lambda) const {
    double dt = HUGE_VAL;
    for (const auto& e : edges)
        dt = std::min(dt, compute_dt(lambda, e.grid.dx(), settings.cfl));
    return dt;
}

double Network::lambda_for_step() const {
    const double bound = wave_speed_bound();
    if (settings.lambda_policy.kind == LambdaPolicy::Kind::FixedGlobal) {
        const double lam = settings.lambda_policy.value;
        if (bound > lam * (1.0 + 1e-12))
            throw SolverError("wave speed " + std::to_string(bound) +
                              " exceeded the fixed propagation speed " +
                              std::to_string(lam));
        return lam;
    }
    return bound;
}

void Network::endpoint_states(double lambda, std::vector<PointState>& left,
                              std::vector<PointState>& right) {
    const std::size_t n = edges.size();
    left.resize(n);
    right.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Edge& e = edges[i];
        if (!e.left_is_junction)
            left[i] = boundary_state(e.left_bc, time, edge_traces(e.state, Side::Left),
                                     Side::Left, lambda, e.params, e.form,
                                     settings.scheme_order, settings.bc_beta_over_A0);
        if (!e.right_is_junction)
            right[i] = boundary_state(e.right_bc, time, edge_traces(e.state, Side::Right),
                                      Side::Right, lambda, e.params, e.form,
                                      settings.scheme_order, settings.bc_beta_over_A0);
    }

    // Interface mass flux seen by an edge end, given trace and ghost state.
    auto flux_right_end = [lambda](const PointState& tr, const PointState& gh) {
        return 0.5 * (tr.VA + gh.VA) - 0.5 * lambda * (gh.A - tr.A);
    };
    auto flux_left_end = [lambda](const PointState& tr, const PointState& gh) {
        return 0.5 * (gh.VA + tr.VA) - 0.5 * lambda * (tr.A - gh.A);
    };

    for (const auto& j : junctions) {
        Edge& pe = edges[j.parent];
        const PointState ptr = edge_traces(pe.state, Side::Right).c1;
        if (j.kind == Junction::Kind::OneToOne) {
            Edge& ce = edges[j.child1];
            const PointState ctr = edge_traces(ce.state, Side::Left).c1;
            const JunctionStates11 s =
                pe.form == ModelForm::Flow
                    ? couple_one_to_one(ptr, ctr, pe.params, ce.params, lambda)
                    : couple_one_to_one_velocity(ptr, ctr, pe.params, ce.params, lambda);
            right[j.parent] = s.parent;
            left[j.child1] = s.child;
            const double defect =
                std::fabs(flux_right_end(ptr, s.parent) - flux_left_end(ctr, s.child)) /
                (lambda * 0.5 * (ptr.A + ctr.A));
            max_junction_flux_defect = std::max(max_junction_flux_defect, defect);
        } else {
            Edge& c1 = edges[j.child1];
            Edge& c2 = edges[j.child2];
            const PointState t1 = edge_traces(c1.state, Side::Left).c1;
            const PointState t2 = edge_traces(c2.state, Side::Left).c1;
            const JunctionStates12 s = couple_one_to_two(ptr, t1, t2, pe.params,
                                                         c1.params, c2.params, lambda);
            right[j.parent] = s.parent;
            left[j.child1] = s.child1;
            left[j.child2] = s.child2;
            const double Abar = (ptr.A + t1.A + t2.A) / 3.0;
            const double defect = std::fabs(flux_right_end(ptr, s.parent) -
                                            flux_left_end(t1, s.child1) -
                                            flux_left_end(t2, s.child2)) /
                                  (lambda * Abar);
            max_junction_flux_defect = std::max(max_junction_flux_defect, defect);
        }
    }
}

void Network::step_once(double dt, double lambda) {
    std::vector<PointState> left, right;
    endpoint_states(lambda, left, right);

    std::vector<std::vector<double>> A_pre(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].params.gamma > 0.0) A_pre[i] = edges[i].state.A;

    for (std::size_t i = 0; i < edges.size(); ++i) {
        Edge& e = edges[i];
        if (settings.epsilon > 0.0)
            step_relaxation(e.state, e.params, e.grid, lambda, dt, settings.epsilon,
                            left[i], right[i], e.ws);
        else
            step_limit(e.state, e.params, e.grid, lambda, dt, left[i], right[i],
                       settings.scheme_order, e.ws, e.left_is_junction,
                       e.right_is_junction);
    }

    for (std::size_t i = 0; i < edges.size(); ++i) {
        Edge& e = edges[i];
        if (e.params.gamma <= 0.0) continue;
        const DiffusionClosure lc = e.left_is_junction
                                        ? DiffusionClosure::mirror()
                                        : damping_closure(e.left_bc, time, left[i]);
        const DiffusionClosure rc = e.right_is_junction
                                        ? DiffusionClosure::mirror()
                                        : damping_closure(e.right_bc, time, right[i]);
        viscoelastic_step(e.state, e.params, e.grid, dt, A_pre[i], lc, rc);
    }

    time += dt;
    ++steps_taken;
}

SimulationRecord Network::run() {
    validate();
    SimulationRecord rec;
    const double t_end = settings.t_end;

    std::vector<double> sched;
    for (double t : settings.snapshot_times)
        if (t >= 0.0 && t <= t_end + 1e-12 * std::max(1.0, t_end)) sched.push_back(t);
    std::sort(sched.begin(), sched.end());
    sched.erase(std::unique(sched.begin(), sched.end()), sched.end());
    if (sched.empty()) sched.push_back(t_end);

    auto take = [&]() {
        Snapshot snap;
        snap.t = time;
        for (const auto& e : edges) snap.edges.push_back({e.state.A, e.state.Q});
        rec.snapshots.push_back(std::move(snap));
    };

    std::size_t next = 0;
    while (next < sched.size() && sched[next] <= 1e-14 * std::max(1.0, t_end)) {
        take();
        ++next;
    }

    while (time < t_end - 1e-12 * std::max(1.0, t_end)) {
        const double bound = wave_speed_bound();
        rec.max_wave_speed = std::max(rec.max_wave_speed, bound);
        const double lambda = lambda_for_step();
        double dt = cfl_dt(lambda);
        const double target = next < sched.size() ? sched[next] : t_end;
        bool hit = false;
        if (time + dt >= target - 1e-12 * std::max(1.0, target)) {
            dt = target - time;
            hit = true;
        }
        if (dt > 0.0) step_once(dt, lambda);
        if (hit) {
            time = target;
            if (next < sched.size()) {
                take();
                ++next;
            }
        }
    }

    rec.steps = steps_taken;
    rec.final_time = time;
    rec.max_junction_flux_defect = max_junction_flux_defect;
    return rec;
}

}  // namespace hemo

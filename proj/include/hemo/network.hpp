#pragma once

#include <vector>

#include "hemo/boundary.hpp"
#include "hemo/scheme.hpp"
#include "hemo/types.hpp"

namespace hemo {

struct Edge {
    int id = 0;
    VesselParams params;
    Grid grid;
    ModelForm form = ModelForm::Flow;
    EdgeState state;
    BoundarySpec left_bc;
    BoundarySpec right_bc;
    // Set by the Network constructor from the junction list.
    bool left_is_junction = false;
    bool right_is_junction = false;
    EdgeWorkspace ws;
};

// Junctions connect the right end of the parent edge to the left end of the
// child edge(s); indices refer to Network::edges.
struct Junction {
    enum class Kind { OneToOne, OneToTwo };
    Kind kind = Kind::OneToOne;
    int parent = -1;
    int child1 = -1;
    int child2 = -1;
};

struct EdgeSnapshot {
    std::vector<double> A;
    std::vector<double> Q;  // stored second variable: flow, or velocity
};

struct Snapshot {
    double t = 0.0;
    std::vector<EdgeSnapshot> edges;
};

struct SimulationRecord {
    std::vector<Snapshot> snapshots;
    long steps = 0;
    double final_time = 0.0;
    // Largest per-step wave-speed bound seen; a fixed propagation speed is
    // admissible for the run iff it is >= this.
    double max_wave_speed = 0.0;
    // Largest scaled mass-flux imbalance the junction states left at a node.
    double max_junction_flux_defect = 0.0;
};

class Network {
  public:
    Network(std::vector<Edge> edges_in, std::vector<Junction> junctions_in,
            RunSettings settings_in);

    void validate() const;

    double wave_speed_bound() const;
    double cfl_dt(double lambda) const;

    // One full step: endpoint states for every edge, conservative update,
    // then the damping substep on edges with a viscoelastic wall.
    void step_once(double dt, double lambda);

    SimulationRecord run();

    std::vector<Edge> edges;
    std::vector<Junction> junctions;
    RunSettings settings;
    double time = 0.0;
    long steps_taken = 0;
    double max_junction_flux_defect = 0.0;

  private:
    double lambda_for_step() const;
    void endpoint_states(double lambda, std::vector<PointState>& left,
                         std::vector<PointState>& right);
};

}  // namespace hemo

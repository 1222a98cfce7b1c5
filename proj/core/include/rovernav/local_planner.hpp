#pragma once

#include <optional>
#include <vector>

#include "rovernav/global_planner.hpp"
#include "rovernav/sensor.hpp"

namespace rovernav {

/// Constant speed / constant turn-rate motion primitive with its evaluated
/// cost terms. Poses are in the rover-local frame of the evaluating cycle.
struct Arc {
    double speed = 0.0;     // m/s
    double omega = 0.0;     // rad/s
    double duration = 0.0;  // s
    std::vector<Pose2> poses;

    double steering_cost = 0.0;        // |omega|
    double traversability_cost = 0.0;  // sum of sampled cell costs
    double goal_cost = 0.0;            // endpoint distance to target
    double total_cost = 0.0;
    bool feasible = true;  // false when a sampled cell is untraversable
};

struct ArcWeights {
    double alpha = 1.0;  // steering
    double beta = 1.0;   // traversability
    double gamma = 0.1;  // goal
};

struct ArcConfig {
    double speed = 3.5;       // m/s
    double omega_max = 0.3;   // rad/s
    int n_arcs = 15;          // odd, >= 3, so omega = 0 is included
    double duration = 5.0;    // s
    int n_samples = 20;       // poses per arc
    ArcWeights weights;
    double c_unobs = 0.5;     // cost charged for unobserved/off-map samples
};

/// Turn rates evenly spaced over [-omega_max, omega_max]; poses by exact
/// unicycle integration at times k*T/n_samples, k = 1..n_samples.
std::vector<Arc> generate_arcs(double speed, double omega_max, int n_arcs, double duration,
                               int n_samples);

/// Fills the arc's cost terms against the local costmap. target is in the
/// rover-local frame. Sampled cells at or above c_max mark the arc
/// infeasible; unobserved or off-map samples contribute c_unobs.
void evaluate_arc(Arc& arc, const LocalCostMap& lcm, const Vec2& target,
                  const ArcWeights& weights, double c_unobs,
                  double c_max = kUntraversableCost);

/// Index of the minimum-total feasible arc; ties break toward smaller
/// |omega|, then toward positive omega. nullopt when every arc is
/// infeasible; throws on empty input.
std::optional<size_t> select_arc(const std::vector<Arc>& arcs);

/// Waypoint on the path whose along-path distance from the waypoint nearest
/// the rover is closest to `lookahead_m`; the final waypoint when the path
/// is shorter.
Vec2 lookahead_target(const GlobalPath& path, const Vec2& rover, double lookahead_m);

}  // namespace rovernav

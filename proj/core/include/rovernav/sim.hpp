#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rovernav/clustering.hpp"
#include "rovernav/fusion.hpp"
#include "rovernav/local_planner.hpp"
#include "rovernav/sensor.hpp"
#include "rovernav/terrain.hpp"

namespace rovernav {

/// Rover pose plus mission clock. Pose is assumed perfectly known.
struct RoverState {
    Pose2 pose;
    double t = 0.0;
};

enum class PlanMode { baseline, replan };
enum class Outcome { reached, stuck, timeout };

struct RunMetrics {
    double total_path_cost = 0.0;
    int n_collisions = 0;          // small-rock contact intervals
    int n_blocking_contacts = 0;   // cycles halted by a medium rock
    double total_time_s = 0.0;
    double total_distance_m = 0.0;
    Outcome outcome = Outcome::timeout;
    uint64_t seed = 0;
    int n_replan_failures = 0;     // post-t0 unreachable-goal events
};

struct TraceRow {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
    int cycle_id = 0;
    double step_cost = 0.0;
    int collision_flag = 0;  // 0 none, 1 small contact, 2 blocked
};

struct RunTrace {
    std::vector<TraceRow> rows;
};

struct RunResult {
    RunMetrics metrics;
    RunTrace trace;
};

/// Everything the closed loop needs beyond the scenario itself. Defaults
/// follow the mission profile: 5 s replan cycle, 10 m goal radius, arcs at
/// v = 3.5 m/s with omega in [-0.3, 0.3].
struct SimConfig {
    CameraModel camera;
    CostmapWeights costmap_weights;
    FeatureConfig features;
    ClusterConfig clusters;
    FusionConfig fusion;
    ArcConfig arcs;

    double topdown_m_per_px = 0.5;
    double global_res_m = 1.0;
    double lookahead_m = 15.0;
    bool goal_directed_arcs = false;  // true: AutoNav-style final-goal target

    double cycle_s = 5.0;
    double substep_s = 0.25;
    double goal_radius_m = 10.0;
    double stuck_window_s = 30.0;
    double stuck_displacement_m = 0.5;
    double timeout_s = 1000.0;
    double clearance_m = 0.15;  // rocks at or below this height never touch
};

struct CollisionReport {
    bool small_contact = false;
    bool medium_contact = false;
};

/// Exact unicycle step, clamped to the extent when it would exit.
struct StepResult {
    RoverState state;
    bool hit_boundary = false;
};
StepResult step_rover(const RoverState& s, double v, double omega, double dt,
                      const Vec2& extent);

/// Instantaneous contact test: rover center within rock radius of a rock
/// taller than the clearance.
CollisionReport check_collision(const RoverState& s, const TerrainModel& t, double clearance);

/// Runs a full closed-loop scenario. Per 5 s cycle: sense, (replan mode
/// only) fuse local samples into the global costmap and re-run A*, pick an
/// arc against the lookahead target, then drive in 0.25 s kinematic
/// substeps with swept-segment collision checks. Terminates on the goal
/// radius, the stuck detector, or the timeout. When dump_dir is set, per-
/// cycle costmap snapshots are written there.
RunResult run_scenario(const ScenarioSpec& spec, PlanMode mode, const SimConfig& cfg,
                       const std::optional<std::string>& dump_dir = std::nullopt);

}  // namespace rovernav

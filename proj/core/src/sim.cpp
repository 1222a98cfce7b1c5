#include "rovernav/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>

#include "rovernav/io.hpp"

namespace rovernav {

StepResult step_rover(const RoverState& s, double v, double omega, double dt,
                      const Vec2& extent) {
    if (dt < 0.0) throw std::invalid_argument("step_rover: dt must be nonnegative");

    Vec2 delta_body{v * dt, 0.0};
    double dtheta = omega * dt;
    if (omega != 0.0) {
        const double r = v / omega;
        delta_body = {r * std::sin(omega * dt), r * (1.0 - std::cos(omega * dt))};
    }

    StepResult out;
    out.state.t = s.t + dt;
    out.state.pose.heading = normalize_angle(s.pose.heading + dtheta);
    Vec2 p = s.pose.position + rotate(delta_body, s.pose.heading);
    const Vec2 clamped{std::clamp(p.x, 0.0, extent.x), std::clamp(p.y, 0.0, extent.y)};
    out.hit_boundary = clamped.x != p.x || clamped.y != p.y;
    out.state.pose.position = clamped;
    return out;
}

CollisionReport check_collision(const RoverState& s, const TerrainModel& t, double clearance) {
    CollisionReport report;
    for (const RockInstance& rock : t.rocks) {
        if (rock.height <= clearance) continue;
        if ((s.pose.position - rock.center).norm() <= rock.radius) {
            if (rock.rock_class == RockClass::medium)
                report.medium_contact = true;
            else
                report.small_contact = true;
        }
    }
    return report;
}

namespace {

struct SweptContacts {
    std::vector<int> small_rocks;  // indices of small rocks touched
    bool medium = false;
};

SweptContacts swept_contacts(const Vec2& from, const Vec2& to, const TerrainModel& t,
                             double clearance) {
    SweptContacts out;
    for (int i = 0; i < static_cast<int>(t.rocks.size()); ++i) {
        const RockInstance& rock = t.rocks[i];
        if (rock.height <= clearance) continue;
        if (point_segment_distance(rock.center, from, to) <= rock.radius) {
            if (rock.rock_class == RockClass::medium)
                out.medium = true;
            else
                out.small_rocks.push_back(i);
        }
    }
    return out;
}

std::string cycle_stem(const std::string& dir, int cycle, const char* what) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "cycle_%03d_%s", cycle, what);
    return dir + "/" + buf;
}

}  // namespace

RunResult run_scenario(const ScenarioSpec& spec, PlanMode mode, const SimConfig& cfg,
                       const std::optional<std::string>& dump_dir) {
    validate_scenario(spec);
    const TerrainModel terrain = generate_terrain(spec);
    const TopDownImage topdown = render_topdown(terrain, cfg.topdown_m_per_px);
    const ClusterMap clusters = cluster_regions(topdown, cfg.clusters, cfg.global_res_m);
    GlobalCostMap global_map = init_global_costmap(topdown, cfg.fusion.prior_gain,
                                                   cfg.fusion.prior_offset, cfg.global_res_m);
    FeatureCache features(terrain, cfg.features, global_map.frame, global_map.cost.rows(),
                          global_map.cost.cols());

    if (dump_dir) {
        std::filesystem::create_directories(*dump_dir);
        write_topdown_ppm(*dump_dir + "/topdown.ppm", topdown);
        write_cluster_ppm(*dump_dir + "/clusters.ppm", clusters);
    }

    RunResult result;
    RunMetrics& metrics = result.metrics;
    metrics.seed = spec.seed;

    RoverState state;
    state.pose.position = spec.start;
    const Vec2 to_goal = spec.goal - spec.start;
    state.pose.heading = (to_goal.norm() > 0.0) ? std::atan2(to_goal.y, to_goal.x) : 0.0;
    state.t = 0.0;

    // Unreachable at t = 0 aborts the run (propagates to the caller).
    GlobalPath path = plan_global(global_map, state.pose.position, spec.goal);

    auto emit = [&](int cycle, double step_cost, int flag) {
        result.trace.rows.push_back({state.t, state.pose.position.x, state.pose.position.y,
                                     state.pose.heading, cycle, step_cost, flag});
    };
    emit(0, 0.0, 0);

    const int window_substeps =
        std::max(1, static_cast<int>(std::lround(cfg.stuck_window_s / cfg.substep_s)));
    std::vector<Vec2> history{state.pose.position};

    auto finished = [&]() -> std::optional<Outcome> {
        if ((state.pose.position - spec.goal).norm() <= cfg.goal_radius_m)
            return Outcome::reached;
        const int n = static_cast<int>(history.size());
        if (n > window_substeps &&
            (history[n - 1] - history[n - 1 - window_substeps]).norm() <
                cfg.stuck_displacement_m)
            return Outcome::stuck;
        if (state.t >= cfg.timeout_s) return Outcome::timeout;
        return std::nullopt;
    };

    std::vector<CostSample> sample_pool;
    std::set<int> contact_set;  // small rocks currently in contact
    std::optional<Outcome> outcome = finished();

    const int n_substeps =
        std::max(1, static_cast<int>(std::lround(cfg.cycle_s / cfg.substep_s)));

    for (int cycle = 0; !outcome; ++cycle) {
        // Sense.
        const DepthImage depth = render_depth_image(terrain, state.pose, cfg.camera);
        const PointCloud cloud = project_point_cloud(depth, cfg.camera);
        const LocalCostMap lcm =
            build_local_costmap(cloud, state.pose, cfg.costmap_weights, cfg.camera.max_depth);

        // Fuse and replan (replan mode); the baseline keeps its fixed plan.
        if (mode == PlanMode::replan) {
            std::vector<CostSample> fresh = collect_cost_samples(lcm, features, state.t);
            sample_pool.insert(sample_pool.end(), std::make_move_iterator(fresh.begin()),
                               std::make_move_iterator(fresh.end()));
            global_map = update_global_costmap(global_map, clusters, sample_pool, cfg.fusion,
                                               features);
            try {
                path = plan_global(global_map, state.pose.position, spec.goal);
            } catch (const UnreachableGoalError&) {
                ++metrics.n_replan_failures;  // drive on with the previous path
            }
        }

        if (dump_dir) {
            write_local_costmap_csv(cycle_stem(*dump_dir, cycle, "local") + ".csv", lcm);
            write_global_costmap_csv(cycle_stem(*dump_dir, cycle, "global"), global_map);
        }

        // Pick an arc toward the lookahead point on the current path.
        const Vec2 target_world = cfg.goal_directed_arcs
                                      ? spec.goal
                                      : lookahead_target(path, state.pose.position,
                                                         cfg.lookahead_m);
        const Vec2 target_local = state.pose.local_from_world(target_world);

        std::vector<Arc> arcs = generate_arcs(cfg.arcs.speed, cfg.arcs.omega_max,
                                              cfg.arcs.n_arcs, cfg.arcs.duration,
                                              cfg.arcs.n_samples);
        for (Arc& arc : arcs)
            evaluate_arc(arc, lcm, target_local, cfg.arcs.weights, cfg.arcs.c_unobs);
        const auto selected = select_arc(arcs);

        // All arcs infeasible: zero-throttle cycle; stuck accounting runs on.
        const double v = selected ? arcs[*selected].speed : 0.0;
        const double omega = selected ? arcs[*selected].omega : 0.0;

        bool blocked = false;
        bool counted_block = false;
        for (int k = 0; k < n_substeps && !outcome; ++k) {
            double step_cost = 0.0;
            int flag = blocked ? 2 : 0;

            if (!blocked && v > 0.0) {
                const StepResult step = step_rover(state, v, omega, cfg.substep_s, spec.extent);
                const SweptContacts contacts = swept_contacts(
                    state.pose.position, step.state.pose.position, terrain, cfg.clearance_m);

                if (contacts.medium) {
                    // Blocking contact: the move is refused and the rover
                    // holds position for the rest of the cycle.
                    blocked = true;
                    flag = 2;
                    if (!counted_block) {
                        ++metrics.n_blocking_contacts;
                        counted_block = true;
                    }
                    state.t += cfg.substep_s;
                } else {
                    // One collision per rock per contiguous contact interval.
                    for (int rock : contacts.small_rocks)
                        if (!contact_set.count(rock)) ++metrics.n_collisions;
                    contact_set = std::set<int>(contacts.small_rocks.begin(),
                                                contacts.small_rocks.end());
                    if (!contacts.small_rocks.empty()) flag = 1;

                    metrics.total_distance_m +=
                        (step.state.pose.position - state.pose.position).norm();

                    // Path cost: current local costmap's cell under the new
                    // position; unobserved cells contribute nothing.
                    const Vec2 local =
                        lcm.capture_pose.local_from_world(step.state.pose.position);
                    if (const auto cell = lcm.cell_of_local(local);
                        cell && lcm.observed.at(cell->r, cell->c))
                        step_cost = lcm.cost.at(cell->r, cell->c);
                    metrics.total_path_cost += step_cost;

                    state = step.state;
                }
            } else {
                state.t += cfg.substep_s;
            }

            emit(cycle, step_cost, flag);
            history.push_back(state.pose.position);
            outcome = finished();
        }
    }

    metrics.outcome = *outcome;
    metrics.total_time_s = state.t;
    return result;
}

}  // namespace rovernav

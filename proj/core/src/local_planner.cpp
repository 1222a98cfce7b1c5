#include "rovernav/local_planner.hpp"

#include <cmath>
#include <stdexcept>

namespace rovernav {

namespace {

/// Exact unicycle displacement from the origin after time t.
Pose2 unicycle_pose(double v, double omega, double t) {
    if (omega == 0.0) return {{v * t, 0.0}, 0.0};
    const double r = v / omega;
    return {{r * std::sin(omega * t), r * (1.0 - std::cos(omega * t))},
            normalize_angle(omega * t)};
}

}  // namespace

std::vector<Arc> generate_arcs(double speed, double omega_max, int n_arcs, double duration,
                               int n_samples) {
    if (n_arcs < 3 || n_arcs % 2 == 0)
        throw std::invalid_argument("generate_arcs: n_arcs must be odd and >= 3");
    if (n_samples < 1)
        throw std::invalid_argument("generate_arcs: n_samples must be >= 1");
    if (speed <= 0.0 || duration <= 0.0 || omega_max < 0.0)
        throw std::invalid_argument("generate_arcs: speed and duration must be positive");

    std::vector<Arc> arcs;
    arcs.reserve(n_arcs);
    for (int i = 0; i < n_arcs; ++i) {
        Arc a;
        a.speed = speed;
        a.duration = duration;
        a.omega = -omega_max + 2.0 * omega_max * i / (n_arcs - 1);
        if (i == (n_arcs - 1) / 2) a.omega = 0.0;  // keep the straight arc exact
        a.poses.reserve(n_samples);
        for (int k = 1; k <= n_samples; ++k)
            a.poses.push_back(unicycle_pose(a.speed, a.omega, duration * k / n_samples));
        arcs.push_back(std::move(a));
    }
    return arcs;
}

void evaluate_arc(Arc& arc, const LocalCostMap& lcm, const Vec2& target,
                  const ArcWeights& weights, double c_unobs, double c_max) {
    arc.steering_cost = std::fabs(arc.omega);
    arc.feasible = true;

    double trav = 0.0;
    for (const Pose2& p : arc.poses) {
        const auto cell = lcm.cell_of_local(p.position);
        if (cell && lcm.observed.at(cell->r, cell->c)) {
            const double c = lcm.cost.at(cell->r, cell->c);
            if (c >= c_max) arc.feasible = false;
            trav += c;
        } else {
            trav += c_unobs;
        }
    }
    arc.traversability_cost = trav;
    arc.goal_cost = (arc.poses.back().position - target).norm();
    arc.total_cost = weights.alpha * arc.steering_cost +
                     weights.beta * arc.traversability_cost + weights.gamma * arc.goal_cost;
}

std::optional<size_t> select_arc(const std::vector<Arc>& arcs) {
    if (arcs.empty()) throw std::invalid_argument("select_arc: empty candidate set");

    std::optional<size_t> best;
    for (size_t i = 0; i < arcs.size(); ++i) {
        if (!arcs[i].feasible) continue;
        if (!best) {
            best = i;
            continue;
        }
        const Arc& a = arcs[i];
        const Arc& b = arcs[*best];
        const bool better =
            a.total_cost < b.total_cost ||
            (a.total_cost == b.total_cost &&
             (std::fabs(a.omega) < std::fabs(b.omega) ||
              (std::fabs(a.omega) == std::fabs(b.omega) && a.omega > b.omega)));
        if (better) best = i;
    }
    return best;
}

Vec2 lookahead_target(const GlobalPath& path, const Vec2& rover, double lookahead_m) {
    if (path.waypoints.empty())
        throw std::invalid_argument("lookahead_target: empty path");

    size_t nearest = 0;
    double nearest_d2 = (path.waypoints[0] - rover).squared_norm();
    for (size_t i = 1; i < path.waypoints.size(); ++i) {
        const double d2 = (path.waypoints[i] - rover).squared_norm();
        if (d2 < nearest_d2) {
            nearest = i;
            nearest_d2 = d2;
        }
    }

    // Walk forward along the remaining path; pick the waypoint whose
    // cumulative distance is closest to the lookahead.
    size_t best = nearest;
    double best_gap = lookahead_m;  // gap at distance 0
    double cum = 0.0;
    for (size_t i = nearest + 1; i < path.waypoints.size(); ++i) {
        cum += (path.waypoints[i] - path.waypoints[i - 1]).norm();
        const double gap = std::fabs(cum - lookahead_m);
        if (gap < best_gap) {
            best = i;
            best_gap = gap;
        }
        if (cum >= lookahead_m) break;
    }
    return path.waypoints[best];
}

}  // namespace rovernav

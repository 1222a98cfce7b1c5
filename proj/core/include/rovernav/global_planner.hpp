#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "rovernav/fusion.hpp"

namespace rovernav {

struct UnreachableGoalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Waypoint path over the global costmap; consecutive waypoints are
/// 4-adjacent cell centers.
struct GlobalPath {
    std::vector<Vec2> waypoints;
    std::vector<GridFrame::Cell> cells;
    double total_cost = 0.0;
};

/// A* minimum-cost path, four-directional neighbors, Euclidean heuristic.
/// Edge cost = step_length * (c_base + cost(destination cell)); cells at
/// kUntraversableCost are obstacles (the start cell is always expandable).
/// Ties in f break toward the lower cell index. Throws UnreachableGoalError
/// when the goal is enclosed; start == goal yields a single-waypoint path.
GlobalPath plan_global(const GlobalCostMap& g, const Vec2& start, const Vec2& goal,
                       double c_base = 1.0);

}  // namespace rovernav

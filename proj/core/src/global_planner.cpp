#include "rovernav/global_planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace rovernav {

namespace {

struct OpenEntry {
    double f;
    int index;
    // Min-heap on f, then on index: the spec'd deterministic tie-break.
    bool operator>(const OpenEntry& o) const {
        if (f != o.f) return f > o.f;
        return index > o.index;
    }
};

}  // namespace

GlobalPath plan_global(const GlobalCostMap& g, const Vec2& start, const Vec2& goal,
                       double c_base) {
    const int rows = g.cost.rows();
    const int cols = g.cost.cols();
    const auto start_cell = g.frame.cell_of(start);
    const auto goal_cell = g.frame.cell_of(goal);
    if (!g.cost.in_bounds(start_cell.r, start_cell.c) ||
        !g.cost.in_bounds(goal_cell.r, goal_cell.c))
        throw std::invalid_argument("plan_global: start or goal outside the costmap");
    if (g.cost.at(goal_cell.r, goal_cell.c) >= kUntraversableCost)
        throw std::invalid_argument("plan_global: goal cell is untraversable");

    const int start_idx = start_cell.r * cols + start_cell.c;
    const int goal_idx = goal_cell.r * cols + goal_cell.c;

    GlobalPath path;
    if (start_idx == goal_idx) {
        path.waypoints = {g.frame.center_of(start_cell.r, start_cell.c)};
        path.cells = {start_cell};
        path.total_cost = 0.0;
        return path;
    }

    const double step = g.frame.res;
    const Vec2 goal_center = g.frame.center_of(goal_cell.r, goal_cell.c);
    auto heuristic = [&](int r, int c) {
        return (g.frame.center_of(r, c) - goal_center).norm() * c_base;
    };

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> g_score(static_cast<size_t>(rows) * cols, inf);
    std::vector<int> parent(static_cast<size_t>(rows) * cols, -1);
    std::vector<uint8_t> closed(static_cast<size_t>(rows) * cols, 0);

    std::priority_queue<OpenEntry, std::vector<OpenEntry>, std::greater<OpenEntry>> open;
    g_score[start_idx] = 0.0;
    open.push({heuristic(start_cell.r, start_cell.c), start_idx});

    const int dr[4] = {-1, 1, 0, 0};
    const int dc[4] = {0, 0, -1, 1};

    while (!open.empty()) {
        const OpenEntry top = open.top();
        open.pop();
        if (closed[top.index]) continue;  // stale entry
        closed[top.index] = 1;
        if (top.index == goal_idx) break;

        const int r = top.index / cols;
        const int c = top.index % cols;
        for (int k = 0; k < 4; ++k) {
            const int nr = r + dr[k];
            const int nc = c + dc[k];
            if (!g.cost.in_bounds(nr, nc)) continue;
            const int ni = nr * cols + nc;
            if (closed[ni]) continue;
            const double cell_cost = g.cost.at(nr, nc);
            if (cell_cost >= kUntraversableCost) continue;  // obstacle
            const double tentative = g_score[top.index] + step * (c_base + cell_cost);
            if (tentative < g_score[ni]) {
                g_score[ni] = tentative;
                parent[ni] = top.index;
                open.push({tentative + heuristic(nr, nc), ni});
            }
        }
    }

    if (!closed[goal_idx])
        throw UnreachableGoalError("plan_global: no path to goal");

    std::vector<int> chain;
    for (int idx = goal_idx; idx != -1; idx = parent[idx]) chain.push_back(idx);
    std::reverse(chain.begin(), chain.end());

    path.total_cost = g_score[goal_idx];
    path.waypoints.reserve(chain.size());
    path.cells.reserve(chain.size());
    for (int idx : chain) {
        const int r = idx / cols;
        const int c = idx % cols;
        path.cells.push_back({r, c});
        path.waypoints.push_back(g.frame.center_of(r, c));
    }
    return path;
}

}  // namespace rovernav

#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "rovernav/geometry.hpp"
#include "rovernav/grid.hpp"
#include "rovernav/terrain.hpp"

namespace rovernav {

/// Pinhole depth camera rigidly mounted on the rover, yawed with the rover
/// heading. Depth values are optical-axis depth (z along the forward axis),
/// the usual depth-image convention.
struct CameraModel {
    double height_above_ground = 1.5;  // m above the rover's ground contact
    double pitch = -M_PI / 6.0;        // rad, negative = downward
    double hfov = M_PI / 2.0;          // rad
    int image_h = 48;
    int image_w = 64;
    double max_depth = 20.0;           // d_thresh, m
};

struct DepthImage {
    Grid<double> depth;  // meters; invalid pixels hold NaN

    static constexpr double invalid() { return std::numeric_limits<double>::quiet_NaN(); }
    static bool is_valid(double d) { return std::isfinite(d); }

    int valid_count() const {
        int n = 0;
        for (double d : depth.data())
            if (is_valid(d)) ++n;
        return n;
    }
};

/// Points in the rover-local ground frame: x forward, y left, z up,
/// origin at the rover's ground contact.
struct PointCloud {
    std::vector<Vec3> points;
};

struct CostmapWeights {
    double w_grad = 1.0;
    double w_var = 10.0;
};

/// Rover-centric traversability grid covering forward x in [0, d_thresh]
/// and lateral y in [-d_thresh, d_thresh], 1 m cells. Unobserved cells are
/// flagged, never zero-costed.
struct LocalCostMap {
    Grid<double> cost;
    Grid<uint8_t> observed;
    Pose2 capture_pose;     // rover pose when the frame was taken
    double cell_m = 1.0;
    double half_width_m = 0.0;  // lateral half extent (= rows * cell_m)

    /// Cell containing a rover-local point, or nullopt outside the map.
    std::optional<GridFrame::Cell> cell_of_local(const Vec2& p_local) const {
        const int r = static_cast<int>(std::floor(p_local.x / cell_m));
        const int c = static_cast<int>(std::floor((p_local.y + half_width_m) / cell_m));
        if (!cost.in_bounds(r, c)) return std::nullopt;
        return GridFrame::Cell{r, c};
    }

    Vec2 local_center_of(int r, int c) const {
        return {(r + 0.5) * cell_m, (c + 0.5) * cell_m - half_width_m};
    }
};

/// Casts one ray per pixel against the elevation surface (fixed-step march,
/// bisection refinement). Depths beyond max_depth and rays leaving the
/// extent are invalid. Throws if the camera starts at or below the surface.
DepthImage render_depth_image(const TerrainModel& t, const Pose2& pose, const CameraModel& cam);

/// Backprojects valid pixels into the rover-local ground frame.
PointCloud project_point_cloud(const DepthImage& d, const CameraModel& cam);

/// Per occupied cell: cost = w_grad * |fitted plane slope| + w_var * var(z).
/// Cells with fewer than 3 points use the variance term only. Population
/// variance, so single-point cells are defined.
LocalCostMap build_local_costmap(const PointCloud& p, const Pose2& pose,
                                 const CostmapWeights& weights, double d_thresh);

}  // namespace rovernav

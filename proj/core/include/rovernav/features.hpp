#pragma once

#include <optional>
#include <vector>

#include "rovernav/geometry.hpp"
#include "rovernav/grid.hpp"
#include "rovernav/terrain.hpp"

namespace rovernav {

/// Terrain patch descriptor configuration. n_rays downward rays on a
/// sqrt(n_rays) x sqrt(n_rays) lattice over a square patch centered on the
/// query point; each ray contributes (R, G, B, depth).
struct FeatureConfig {
    int n_rays = 16;           // must be a perfect square
    double patch_size_m = 4.0;
    double ray_height_m = 50.0;
};

/// Flat descriptor of length 4 * n_rays, rays in row-major lattice order,
/// (R, G, B, depth) per ray.
struct FeatureVector {
    Vec2 source;
    std::vector<double> values;
};

/// Orthographic nadir render of the whole terrain: color plus an elevation
/// channel, georeferenced by `frame` (res = meters per pixel).
struct TopDownImage {
    Grid<Rgb> color;
    Grid<double> elevation;
    GridFrame frame;
};

FeatureVector extract_feature(const TerrainModel& t, const Vec2& x, const FeatureConfig& cfg);

TopDownImage render_topdown(const TerrainModel& t, double m_per_px);

/// Lazy per-cell feature store over a 1 m world grid. Cells whose patch
/// exits the terrain extent yield nullptr.
class FeatureCache {
public:
    FeatureCache(const TerrainModel& terrain, FeatureConfig cfg, GridFrame frame,
                 int rows, int cols);

    /// Feature at the center of grid cell (r, c); nullptr if unavailable.
    const std::vector<double>* at_cell(int r, int c);

    /// Feature at an arbitrary world point; nullopt if the patch exits.
    std::optional<FeatureVector> at_point(const Vec2& p) const;

    const GridFrame& frame() const { return frame_; }
    int dim() const { return 4 * cfg_.n_rays; }

private:
    const TerrainModel& terrain_;
    FeatureConfig cfg_;
    GridFrame frame_;
    Grid<int8_t> state_;  // -1 unknown, 0 unavailable, 1 cached
    std::vector<std::vector<double>> values_;
};

}  // namespace rovernav

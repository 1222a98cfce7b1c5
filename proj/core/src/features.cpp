#include "rovernav/features.hpp"

#include <cmath>
#include <stdexcept>

namespace rovernav {

namespace {

int lattice_side(int n_rays) {
    if (n_rays <= 0) throw std::invalid_argument("features: n_rays must be positive");
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n_rays))));
    if (side * side != n_rays)
        throw std::invalid_argument("features: n_rays must be a perfect square");
    return side;
}

}  // namespace

FeatureVector extract_feature(const TerrainModel& t, const Vec2& x, const FeatureConfig& cfg) {
    const int side = lattice_side(cfg.n_rays);
    if (cfg.patch_size_m <= 0.0)
        throw std::invalid_argument("features: patch_size must be positive");

    const double half = cfg.patch_size_m / 2.0;
    if (x.x - half < 0.0 || x.x + half > t.extent.x || x.y - half < 0.0 || x.y + half > t.extent.y)
        throw std::out_of_range("extract_feature: patch exits terrain extent");

    FeatureVector f;
    f.source = x;
    f.values.reserve(static_cast<size_t>(4) * cfg.n_rays);

    // Rays on an endpoint-inclusive lattice, row-major: y sweeps rows,
    // x sweeps columns.
    for (int ry = 0; ry < side; ++ry) {
        for (int rx = 0; rx < side; ++rx) {
            const double fx = side > 1 ? static_cast<double>(rx) / (side - 1) : 0.5;
            const double fy = side > 1 ? static_cast<double>(ry) / (side - 1) : 0.5;
            const Vec2 p{x.x - half + cfg.patch_size_m * fx,
                         x.y - half + cfg.patch_size_m * fy};
            const Rgb color = albedo_at(t, p);
            const double ground = height_at(t, p);
            const double depth = cfg.ray_height_m - ground;
            if (depth <= 0.0)
                throw std::runtime_error("extract_feature: ray origin below terrain surface");
            f.values.push_back(color.r);
            f.values.push_back(color.g);
            f.values.push_back(color.b);
            f.values.push_back(depth);
        }
    }
    return f;
}

TopDownImage render_topdown(const TerrainModel& t, double m_per_px) {
    if (m_per_px <= 0.0)
        throw std::invalid_argument("render_topdown: m_per_px must be positive");
    const double w = std::ceil(t.extent.x / m_per_px);
    const double h = std::ceil(t.extent.y / m_per_px);
    if (w * h > 1e8)
        throw std::invalid_argument("render_topdown: resolution yields more than 1e8 pixels");

    TopDownImage img;
    img.frame = {m_per_px, {0.0, 0.0}};
    const int cols = static_cast<int>(w);
    const int rows = static_cast<int>(h);
    img.color = Grid<Rgb>(rows, cols);
    img.elevation = Grid<double>(rows, cols, 0.0);

    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            Vec2 p = img.frame.center_of(r, c);
            // Pixel centers of the last row/col can poke past a non-integer
            // extent; clamp them onto the boundary.
            p.x = std::min(p.x, t.extent.x);
            p.y = std::min(p.y, t.extent.y);
            img.color.at(r, c) = albedo_at(t, p);
            img.elevation.at(r, c) = height_at(t, p);
        }
    }
    return img;
}

FeatureCache::FeatureCache(const TerrainModel& terrain, FeatureConfig cfg, GridFrame frame,
                           int rows, int cols)
    : terrain_(terrain),
      cfg_(cfg),
      frame_(frame),
      state_(rows, cols, static_cast<int8_t>(-1)),
      values_(static_cast<size_t>(rows) * cols) {}

const std::vector<double>* FeatureCache::at_cell(int r, int c) {
    if (!state_.in_bounds(r, c)) return nullptr;
    const size_t idx = static_cast<size_t>(r) * state_.cols() + c;
    if (state_.at(r, c) == -1) {
        const auto f = at_point(frame_.center_of(r, c));
        if (f) {
            values_[idx] = f->values;
            state_.at(r, c) = 1;
        } else {
            state_.at(r, c) = 0;
        }
    }
    return state_.at(r, c) == 1 ? &values_[idx] : nullptr;
}

std::optional<FeatureVector> FeatureCache::at_point(const Vec2& p) const {
    const double half = cfg_.patch_size_m / 2.0;
    if (p.x - half < 0.0 || p.x + half > terrain_.extent.x || p.y - half < 0.0 ||
        p.y + half > terrain_.extent.y)
        return std::nullopt;
    return extract_feature(terrain_, p, cfg_);
}

}  // namespace rovernav

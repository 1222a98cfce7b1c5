#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rovernav/geometry.hpp"
#include "rovernav/grid.hpp"

namespace rovernav {

/// Finite sentinel for untraversable cells. Dominates every reachable
/// accumulated path cost while staying safe for arithmetic.
inline constexpr double kUntraversableCost = 1e6;

enum class RockClass { small, medium };

/// Rock size conventions (radius in meters):
///   small:  [0.05, 0.1]  — traversable, counts as a collision when struck
///   medium: [0.1, 0.2]   — blocks the rover
inline constexpr double kSmallRockRadiusMin = 0.05;
inline constexpr double kSmallRockRadiusMax = 0.1;
inline constexpr double kMediumRockRadiusMin = 0.1;
inline constexpr double kMediumRockRadiusMax = 0.2;

struct RockInstance {
    Vec2 center;        // world frame, meters
    double radius = 0;  // meters
    double height = 0;  // meters
    RockClass rock_class = RockClass::small;
};

struct CraterSpec {
    Vec2 center;
    double radius = 0;
    double depth = 0;
};

struct RockFieldSpec {
    Rect rect;
    RockClass rock_class = RockClass::small;
    double density = 0;  // rocks per square meter
    /// Rock centers are kept this far inside the rect so the visually
    /// distinct (lightened) region strictly contains every rock footprint.
    double placement_margin_m = 1.0;
};

struct ScenarioSpec {
    uint64_t seed = 0;
    Vec2 extent{100.0, 100.0};  // (width_m, height_m)
    Vec2 start;
    Vec2 goal;
    std::optional<RockFieldSpec> rock_field;
    std::vector<CraterSpec> craters;
    double roughness = 0.0;      // base-noise amplitude, meters
    double terrain_res_m = 0.5;  // elevation/albedo raster cell size
};

/// Ground-truth world. Immutable after construction; all queries are pure
/// and safe for unrestricted concurrent reads.
///
/// Grid values are the continuous elevation/albedo functions sampled at
/// cell centers; height_at/albedo_at interpolate bilinearly between cell
/// centers (clamped stencil inside the half-cell border strip).
struct TerrainModel {
    Grid<double> elevation;
    Grid<Rgb> albedo;
    std::vector<RockInstance> rocks;
    double res_m = 0.5;
    Vec2 extent;

    bool inside(const Vec2& p) const {
        return p.x >= 0.0 && p.x <= extent.x && p.y >= 0.0 && p.y <= extent.y;
    }
};

/// Cosine-tapered radial bump: height h at d = 0, compact support d <= r.
inline double rock_bump(double d, double radius, double height) {
    if (d >= radius) return 0.0;
    const double c = std::cos(M_PI * d / (2.0 * radius));
    return height * c * c;
}

/// Parameters of the ground-truth cost oracle. Used by evaluation and tests
/// only; no planner input is ever derived from it.
struct TrueCostParams {
    double w_slope = 1.0;
    double small_rock_penalty = 5.0;
};

void validate_scenario(const ScenarioSpec& spec);

/// Samples rock instances for the field; deterministic in spec.seed.
std::vector<RockInstance> place_rocks(const ScenarioSpec& spec);

/// Rasterizes base noise, craters, and the given rocks into a TerrainModel.
/// Split from generate_terrain so tests can control exact rock placement.
TerrainModel build_terrain(const ScenarioSpec& spec, std::vector<RockInstance> rocks);

/// build_terrain(spec, place_rocks(spec)); pure function of spec.
TerrainModel generate_terrain(const ScenarioSpec& spec);

/// Bilinear elevation at p. Throws std::out_of_range outside the extent.
double height_at(const TerrainModel& t, const Vec2& p);

/// Bilinear albedo at p, clamped to [0,1] per channel.
Rgb albedo_at(const TerrainModel& t, const Vec2& p);

/// Evaluation-only cost oracle: w_slope * ||grad elevation|| plus rock terms
/// (fixed penalty inside small-rock footprints, kUntraversableCost inside
/// medium-rock footprints).
double true_cost_at(const TerrainModel& t, const Vec2& p, const TrueCostParams& params = {});

}  // namespace rovernav

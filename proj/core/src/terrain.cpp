#include "rovernav/terrain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rovernav/noise.hpp"
#include "rovernav/rng.hpp"

namespace rovernav {

namespace {

constexpr double kBaseWavelengthM = 25.0;  // first noise octave period
constexpr int kNoiseOctaves = 3;
constexpr uint64_t kAlbedoSeedSalt = 0xA1BED001ull;
constexpr double kAlbedoBase = 0.40;
constexpr double kAlbedoNoiseAmp = 0.04;
constexpr double kCraterDarkening = 0.45;
constexpr double kRockFieldTone = 0.75;
// Lightened halo around each rock: full tone out to radius + plateau,
// cosine falloff to radius + reach. Dense fields merge into one bright
// region, which is what the clusterer keys on.
constexpr double kHaloPlateauM = 0.6;
constexpr double kHaloReachM = 1.0;
constexpr size_t kMaxRocks = 1000000;

double crater_taper(double d, double radius) {
    if (d >= radius) return 0.0;
    const double c = std::cos(M_PI * d / (2.0 * radius));
    return c * c;
}

double halo_taper(double d, double rock_radius) {
    const double plateau = rock_radius + kHaloPlateauM;
    const double reach = rock_radius + kHaloReachM;
    if (d <= plateau) return 1.0;
    if (d >= reach) return 0.0;
    const double c = std::cos(M_PI_2 * (d - plateau) / (reach - plateau));
    return c * c;
}

struct BilinearStencil {
    int r0, c0, r1, c1;
    double tx, ty;
};

// Bilinear over cell-center samples; indices clamped in the half-cell
// border strip so queries are defined on the whole closed extent.
BilinearStencil stencil_for(const TerrainModel& t, const Vec2& p) {
    const double gx = p.x / t.res_m - 0.5;
    const double gy = p.y / t.res_m - 0.5;
    double fx = std::floor(gx);
    double fy = std::floor(gy);
    int c0 = static_cast<int>(fx);
    int r0 = static_cast<int>(fy);
    double tx = gx - fx;
    double ty = gy - fy;
    const int max_c = t.elevation.cols() - 1;
    const int max_r = t.elevation.rows() - 1;
    if (c0 < 0) { c0 = 0; tx = 0.0; }
    if (r0 < 0) { r0 = 0; ty = 0.0; }
    if (c0 >= max_c) { c0 = max_c; tx = 0.0; }
    if (r0 >= max_r) { r0 = max_r; ty = 0.0; }
    const int c1 = std::min(c0 + 1, max_c);
    const int r1 = std::min(r0 + 1, max_r);
    return {r0, c0, r1, c1, tx, ty};
}

void require_inside(const TerrainModel& t, const Vec2& p, const char* op) {
    if (!t.inside(p))
        throw std::out_of_range(std::string(op) + ": query (" + std::to_string(p.x) + ", " +
                                std::to_string(p.y) + ") outside terrain extent");
}

}  // namespace

void validate_scenario(const ScenarioSpec& spec) {
    if (spec.extent.x <= 0.0 || spec.extent.y <= 0.0)
        throw std::invalid_argument("scenario: extent must be positive");
    if (spec.terrain_res_m <= 0.0)
        throw std::invalid_argument("scenario: terrain resolution must be positive");
    if (spec.roughness < 0.0)
        throw std::invalid_argument("scenario: roughness must be nonnegative");
    const Rect world{{0.0, 0.0}, spec.extent};
    if (!world.contains(spec.start) || !world.contains(spec.goal))
        throw std::invalid_argument("scenario: start and goal must lie inside the extent");
    if (spec.rock_field) {
        const RockFieldSpec& f = *spec.rock_field;
        if (f.density < 0.0)
            throw std::invalid_argument("scenario: rock density must be nonnegative");
        if (f.rect.width() <= 0.0 || f.rect.height() <= 0.0)
            throw std::invalid_argument("scenario: rock field rect must have positive area");
        if (f.rect.contains(spec.start))
            throw std::invalid_argument("scenario: start must not lie inside the rock field");
        const double count = f.density * f.rect.area();
        if (count > static_cast<double>(kMaxRocks))
            throw std::invalid_argument("scenario: rock density produces more than 1e6 rocks");
    }
    for (const CraterSpec& c : spec.craters) {
        if (c.radius <= 0.0 || c.depth < 0.0)
            throw std::invalid_argument("scenario: crater radius must be positive, depth nonnegative");
    }
}

std::vector<RockInstance> place_rocks(const ScenarioSpec& spec) {
    std::vector<RockInstance> rocks;
    if (!spec.rock_field || spec.rock_field->density <= 0.0) return rocks;
    const RockFieldSpec& f = *spec.rock_field;

    const int count = static_cast<int>(std::llround(f.density * f.rect.area()));
    rocks.reserve(count);

    double r_lo = kSmallRockRadiusMin, r_hi = kSmallRockRadiusMax;
    if (f.rock_class == RockClass::medium) {
        r_lo = kMediumRockRadiusMin;
        r_hi = kMediumRockRadiusMax;
    }

    const double m = std::min(f.placement_margin_m,
                              0.5 * std::min(f.rect.width(), f.rect.height()));
    Rng rng(splitmix64(spec.seed ^ 0x50C7F1E1Dull));
    for (int i = 0; i < count; ++i) {
        RockInstance rock;
        rock.center = {rng.uniform(f.rect.min.x + m, f.rect.max.x - m),
                       rng.uniform(f.rect.min.y + m, f.rect.max.y - m)};
        rock.radius = rng.uniform(r_lo, r_hi);
        rock.height = 2.0 * rock.radius;  // height ~ diameter
        rock.rock_class = f.rock_class;
        rocks.push_back(rock);
    }
    return rocks;
}

TerrainModel build_terrain(const ScenarioSpec& spec, std::vector<RockInstance> rocks) {
    validate_scenario(spec);
    for (const RockInstance& r : rocks) {
        const Rect world{{0.0, 0.0}, spec.extent};
        if (!world.contains(r.center) || r.radius <= 0.0 || r.height <= 0.0)
            throw std::invalid_argument("terrain: rock outside extent or non-positive size");
    }

    TerrainModel t;
    t.res_m = spec.terrain_res_m;
    t.extent = spec.extent;
    t.rocks = std::move(rocks);

    const int cols = std::max(2, static_cast<int>(std::ceil(spec.extent.x / t.res_m)));
    const int rows = std::max(2, static_cast<int>(std::ceil(spec.extent.y / t.res_m)));
    t.elevation = Grid<double>(rows, cols, 0.0);
    t.albedo = Grid<Rgb>(rows, cols);

    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const double x = (c + 0.5) * t.res_m;
            const double y = (r + 0.5) * t.res_m;

            double z = 0.0;
            if (spec.roughness > 0.0)
                z = spec.roughness * fbm(x, y, spec.seed, kNoiseOctaves, kBaseWavelengthM);

            double gray = kAlbedoBase +
                          kAlbedoNoiseAmp * fbm(x, y, spec.seed ^ kAlbedoSeedSalt,
                                                kNoiseOctaves, kBaseWavelengthM);

            for (const CraterSpec& crater : spec.craters) {
                const double d = (Vec2{x, y} - crater.center).norm();
                const double taper = crater_taper(d, crater.radius);
                z -= crater.depth * taper;
                gray *= 1.0 - kCraterDarkening * taper;
            }

            t.elevation.at(r, c) = z;
            gray = std::clamp(gray, 0.0, 1.0);
            t.albedo.at(r, c) = {gray, gray, gray};
        }
    }

    // Rocks touch only the cells inside their (halo) footprint.
    for (const RockInstance& rock : t.rocks) {
        const double reach = rock.radius + kHaloReachM;
        const int c_lo = std::max(0, static_cast<int>(std::floor((rock.center.x - reach) / t.res_m)));
        const int c_hi = std::min(cols - 1, static_cast<int>(std::ceil((rock.center.x + reach) / t.res_m)));
        const int r_lo = std::max(0, static_cast<int>(std::floor((rock.center.y - reach) / t.res_m)));
        const int r_hi = std::min(rows - 1, static_cast<int>(std::ceil((rock.center.y + reach) / t.res_m)));
        for (int r = r_lo; r <= r_hi; ++r) {
            for (int c = c_lo; c <= c_hi; ++c) {
                const double x = (c + 0.5) * t.res_m;
                const double y = (r + 0.5) * t.res_m;
                const double d = (Vec2{x, y} - rock.center).norm();
                t.elevation.at(r, c) += rock_bump(d, rock.radius, rock.height);
                const double taper = halo_taper(d, rock.radius);
                if (taper > 0.0) {
                    Rgb& a = t.albedo.at(r, c);
                    a.r = std::clamp(a.r + (kRockFieldTone - a.r) * taper, 0.0, 1.0);
                    a.g = std::clamp(a.g + (kRockFieldTone - a.g) * taper, 0.0, 1.0);
                    a.b = std::clamp(a.b + (kRockFieldTone - a.b) * taper, 0.0, 1.0);
                }
            }
        }
    }
    return t;
}

TerrainModel generate_terrain(const ScenarioSpec& spec) {
    validate_scenario(spec);
    return build_terrain(spec, place_rocks(spec));
}

double height_at(const TerrainModel& t, const Vec2& p) {
    require_inside(t, p, "height_at");
    const BilinearStencil s = stencil_for(t, p);
    const double v00 = t.elevation.at(s.r0, s.c0);
    const double v10 = t.elevation.at(s.r0, s.c1);
    const double v01 = t.elevation.at(s.r1, s.c0);
    const double v11 = t.elevation.at(s.r1, s.c1);
    const double a = v00 + (v10 - v00) * s.tx;
    const double b = v01 + (v11 - v01) * s.tx;
    return a + (b - a) * s.ty;
}

Rgb albedo_at(const TerrainModel& t, const Vec2& p) {
    require_inside(t, p, "albedo_at");
    const BilinearStencil s = stencil_for(t, p);
    const Rgb v00 = t.albedo.at(s.r0, s.c0);
    const Rgb v10 = t.albedo.at(s.r0, s.c1);
    const Rgb v01 = t.albedo.at(s.r1, s.c0);
    const Rgb v11 = t.albedo.at(s.r1, s.c1);
    auto lerp2 = [&](double a00, double a10, double a01, double a11) {
        const double a = a00 + (a10 - a00) * s.tx;
        const double b = a01 + (a11 - a01) * s.tx;
        return std::clamp(a + (b - a) * s.ty, 0.0, 1.0);
    };
    return {lerp2(v00.r, v10.r, v01.r, v11.r),
            lerp2(v00.g, v10.g, v01.g, v11.g),
            lerp2(v00.b, v10.b, v01.b, v11.b)};
}

double true_cost_at(const TerrainModel& t, const Vec2& p, const TrueCostParams& params) {
    require_inside(t, p, "true_cost_at");

    for (const RockInstance& rock : t.rocks) {
        if (rock.rock_class == RockClass::medium &&
            (p - rock.center).norm() <= rock.radius)
            return kUntraversableCost;
    }

    // Central differences at grid resolution, one-sided at the border.
    const double h = t.res_m;
    auto clamped = [&](double x, double y) {
        return height_at(t, {std::clamp(x, 0.0, t.extent.x), std::clamp(y, 0.0, t.extent.y)});
    };
    const double x0 = std::clamp(p.x - h, 0.0, t.extent.x);
    const double x1 = std::clamp(p.x + h, 0.0, t.extent.x);
    const double y0 = std::clamp(p.y - h, 0.0, t.extent.y);
    const double y1 = std::clamp(p.y + h, 0.0, t.extent.y);
    const double dzdx = (x1 > x0) ? (clamped(x1, p.y) - clamped(x0, p.y)) / (x1 - x0) : 0.0;
    const double dzdy = (y1 > y0) ? (clamped(p.x, y1) - clamped(p.x, y0)) / (y1 - y0) : 0.0;

    double cost = params.w_slope * std::hypot(dzdx, dzdy);
    for (const RockInstance& rock : t.rocks) {
        if (rock.rock_class == RockClass::small &&
            (p - rock.center).norm() <= rock.radius) {
            cost += params.small_rock_penalty;
            break;
        }
    }
    return cost;
}

}  // namespace rovernav

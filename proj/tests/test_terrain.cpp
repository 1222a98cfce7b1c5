#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "rovernav/terrain.hpp"

using namespace rovernav;

namespace {

ScenarioSpec flat_spec(double w = 20.0, double h = 20.0, double res = 0.5) {
    ScenarioSpec s;
    s.extent = {w, h};
    s.start = {2.0, 2.0};
    s.goal = {w - 2.0, h - 2.0};
    s.roughness = 0.0;
    s.terrain_res_m = res;
    return s;
}

TerrainModel flat_terrain(double w = 20.0, double h = 20.0, double res = 0.5) {
    return generate_terrain(flat_spec(w, h, res));
}

}  // namespace

TEST_CASE("flat world degenerate case: elevation identically zero") {
    const TerrainModel t = flat_terrain();
    for (double v : t.elevation.data()) CHECK(v == 0.0);
    CHECK(height_at(t, {3.3, 7.9}) == 0.0);
    CHECK(height_at(t, {0.0, 0.0}) == 0.0);
}

TEST_CASE("generate_terrain is deterministic: same seed, bit-identical grids") {
    ScenarioSpec s = flat_spec(40.0, 30.0, 0.25);
    s.seed = 77;
    s.roughness = 0.4;
    s.craters.push_back({{12.0, 9.0}, 5.0, 1.0});
    s.rock_field = RockFieldSpec{{{20.0, 5.0}, {36.0, 25.0}}, RockClass::small, 0.5, 1.0};

    const TerrainModel a = generate_terrain(s);
    const TerrainModel b = generate_terrain(s);
    CHECK(a.elevation.data() == b.elevation.data());
    REQUIRE(a.rocks.size() == b.rocks.size());
    for (size_t i = 0; i < a.rocks.size(); ++i) {
        CHECK(a.rocks[i].center.x == b.rocks[i].center.x);
        CHECK(a.rocks[i].radius == b.rocks[i].radius);
    }
    for (int r = 0; r < a.albedo.rows(); ++r)
        for (int c = 0; c < a.albedo.cols(); ++c) {
            CHECK(a.albedo.at(r, c).r == b.albedo.at(r, c).r);
            CHECK(a.albedo.at(r, c).g == b.albedo.at(r, c).g);
        }
}

TEST_CASE("rock bump extremes: height at center, zero beyond radius") {
    // Rock centered exactly on a cell center so the raster holds the peak.
    ScenarioSpec s = flat_spec(20.0, 20.0, 0.1);
    RockInstance rock;
    rock.center = {10.05, 10.05};
    rock.radius = 0.2;
    rock.height = 0.4;
    rock.rock_class = RockClass::medium;
    const TerrainModel t = build_terrain(s, {rock});

    CHECK(height_at(t, rock.center) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(height_at(t, {10.05 + 0.35, 10.05}) == 0.0);
    CHECK(height_at(t, {10.05, 10.05 - 0.5}) == 0.0);
    // The documented taper itself.
    CHECK(rock_bump(0.0, 0.2, 0.4) == 0.4);
    CHECK(rock_bump(0.2, 0.2, 0.4) == 0.0);
    CHECK(rock_bump(0.1, 0.2, 0.4) == doctest::Approx(0.4 * 0.5));  // cos^2(pi/4)
}

TEST_CASE("height_at: cell-center identity and bilinear midpoint") {
    TerrainModel t = flat_terrain(20.0, 20.0, 1.0);
    t.elevation.at(5, 5) = 1.0;  // center (5.5, 5.5)
    t.elevation.at(5, 6) = 3.0;  // center (6.5, 5.5)
    CHECK(height_at(t, {5.5, 5.5}) == 1.0);
    CHECK(height_at(t, {6.5, 5.5}) == 3.0);
    CHECK(height_at(t, {6.0, 5.5}) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("height_at rejects out-of-extent queries") {
    const TerrainModel t = flat_terrain();
    CHECK_THROWS_AS(height_at(t, {-0.1, 5.0}), std::out_of_range);
    CHECK_THROWS_AS(height_at(t, {5.0, 20.1}), std::out_of_range);
    CHECK_THROWS_AS(albedo_at(t, {25.0, 5.0}), std::out_of_range);
    CHECK_THROWS_AS(true_cost_at(t, {5.0, -1.0}), std::out_of_range);
}

TEST_CASE("albedo_at: uniform gray, cell-center identity, midpoint blend") {
    TerrainModel t = flat_terrain(10.0, 10.0, 1.0);
    for (auto& px : t.albedo.data()) px = {0.5, 0.5, 0.5};
    const Rgb u = albedo_at(t, {3.7, 8.1});
    CHECK(u.r == 0.5);
    CHECK(u.g == 0.5);
    CHECK(u.b == 0.5);

    t.albedo.at(2, 2) = {0.0, 0.0, 0.0};  // center (2.5, 2.5)
    t.albedo.at(2, 3) = {1.0, 1.0, 1.0};  // center (3.5, 2.5)
    const Rgb stored = albedo_at(t, {2.5, 2.5});
    CHECK(stored.r == 0.0);
    const Rgb mid = albedo_at(t, {3.0, 2.5});
    CHECK(mid.r == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mid.g == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("true_cost_at: flat zero, medium sentinel, unit slope plane") {
    TerrainModel t = flat_terrain();
    CHECK(true_cost_at(t, {10.0, 10.0}) == 0.0);

    // Plane z = x: every interior query sees slope magnitude 1.
    for (int r = 0; r < t.elevation.rows(); ++r)
        for (int c = 0; c < t.elevation.cols(); ++c)
            t.elevation.at(r, c) = (c + 0.5) * t.res_m;
    CHECK(true_cost_at(t, {10.0, 10.0}) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(true_cost_at(t, {6.2, 13.4}) == doctest::Approx(1.0).epsilon(1e-9));

    TerrainModel rocky = flat_terrain();
    rocky.rocks.push_back({{10.0, 10.0}, 0.15, 0.3, RockClass::medium});
    CHECK(true_cost_at(rocky, {10.0, 10.0}) == kUntraversableCost);
    CHECK(true_cost_at(rocky, {10.1, 10.0}) == kUntraversableCost);

    TerrainModel small_rock = flat_terrain();
    small_rock.rocks.push_back({{10.0, 10.0}, 0.08, 0.16, RockClass::small});
    CHECK(true_cost_at(small_rock, {10.0, 10.0}) == doctest::Approx(5.0));
}

TEST_CASE("generate_terrain rejects invalid scenarios") {
    ScenarioSpec s = flat_spec();
    s.extent = {0.0, 10.0};
    CHECK_THROWS_AS(generate_terrain(s), std::invalid_argument);

    s = flat_spec();
    s.terrain_res_m = -0.5;
    CHECK_THROWS_AS(generate_terrain(s), std::invalid_argument);

    s = flat_spec(2000.0, 2000.0);
    s.rock_field = RockFieldSpec{{{0.0, 0.0}, {2000.0, 2000.0}}, RockClass::small, 10.0, 1.0};
    s.start = {2000.0, 2000.0};  // outside the field rect corner margin
    CHECK_THROWS_AS(generate_terrain(s), std::invalid_argument);  // > 1e6 rocks

    s = flat_spec();
    s.rock_field = RockFieldSpec{{{0.0, 0.0}, {20.0, 20.0}}, RockClass::small, 0.1, 1.0};
    CHECK_THROWS_AS(generate_terrain(s), std::invalid_argument);  // start inside field
}

TEST_CASE("place_rocks respects class radius ranges and rect margins") {
    ScenarioSpec s = flat_spec(60.0, 60.0);
    s.seed = 5;
    s.start = {2.0, 2.0};
    s.rock_field = RockFieldSpec{{{20.0, 20.0}, {40.0, 40.0}}, RockClass::medium, 0.8, 1.0};
    const auto rocks = place_rocks(s);
    CHECK(rocks.size() == static_cast<size_t>(std::llround(0.8 * 400.0)));
    for (const auto& r : rocks) {
        CHECK(r.radius >= kMediumRockRadiusMin);
        CHECK(r.radius <= kMediumRockRadiusMax);
        CHECK(r.height == 2.0 * r.radius);
        CHECK(r.center.x >= 21.0);
        CHECK(r.center.x <= 39.0);
        CHECK(r.center.y >= 21.0);
        CHECK(r.center.y <= 39.0);
    }

    s.rock_field->rock_class = RockClass::small;
    for (const auto& r : place_rocks(s)) {
        CHECK(r.radius >= kSmallRockRadiusMin);
        CHECK(r.radius <= kSmallRockRadiusMax);
    }
}

TEST_CASE("height_at is continuous across cell boundaries") {
    ScenarioSpec s = flat_spec(40.0, 40.0, 0.5);
    s.seed = 11;
    s.roughness = 0.5;
    const TerrainModel t = generate_terrain(s);
    const double eps = 1e-6;
    // Straddle vertical and horizontal cell boundaries.
    for (double b : {10.0, 10.5, 17.5, 23.0}) {
        CHECK(std::fabs(height_at(t, {b + eps, 15.3}) - height_at(t, {b - eps, 15.3})) < 1e-4);
        CHECK(std::fabs(height_at(t, {15.3, b + eps}) - height_at(t, {15.3, b - eps})) < 1e-4);
    }
}

TEST_CASE("no rocks, no craters, zero roughness: true cost vanishes everywhere") {
    const TerrainModel t = flat_terrain(30.0, 30.0);
    for (double x = 0.5; x < 30.0; x += 2.7)
        for (double y = 0.5; y < 30.0; y += 2.3) CHECK(true_cost_at(t, {x, y}) == 0.0);
}

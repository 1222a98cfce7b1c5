#include <doctest.h>

#include <cmath>

#include "rovernav/sensor.hpp"
#include "rovernav/terrain.hpp"

using namespace rovernav;

namespace {

TerrainModel flat_terrain(double w = 60.0, double h = 60.0, double elevation = 0.0) {
    ScenarioSpec s;
    s.extent = {w, h};
    s.start = {2.0, 2.0};
    s.goal = {w - 2.0, h - 2.0};
    s.terrain_res_m = 0.5;
    TerrainModel t = generate_terrain(s);
    if (elevation != 0.0)
        for (double& v : t.elevation.data()) v = elevation;
    return t;
}

// Same pinhole geometry as the renderer, rebuilt here as the analytic
// ray-plane oracle for flat ground at z = 0.
double expected_plane_depth(const CameraModel& cam, int row, int col, double cam_z) {
    const double fx = (cam.image_w / 2.0) / std::tan(cam.hfov / 2.0);
    const double ux = (col + 0.5 - cam.image_w / 2.0) / fx;
    const double uy = (row + 0.5 - cam.image_h / 2.0) / fx;
    const double cp = std::cos(cam.pitch), sp = std::sin(cam.pitch);
    const Vec3 fwd{cp, 0.0, sp};
    const Vec3 right{0.0, -1.0, 0.0};
    const Vec3 down = fwd.cross(right);
    const Vec3 raw = fwd + right * ux + down * uy;
    if (raw.z >= 0.0) return -1.0;        // never hits the plane
    return -cam_z / raw.z;                // optical depth: origin + z*raw hits z=0
}

}  // namespace

TEST_CASE("straight-down camera over flat terrain: every valid depth equals altitude") {
    const TerrainModel t = flat_terrain();
    CameraModel cam;
    cam.pitch = -M_PI / 2.0;
    cam.height_above_ground = 2.0;
    const Pose2 pose{{30.0, 30.0}, 0.7};

    const DepthImage img = render_depth_image(t, pose, cam);
    CHECK(img.valid_count() == cam.image_h * cam.image_w);
    for (double d : img.depth.data()) {
        REQUIRE(DepthImage::is_valid(d));
        CHECK(d == doctest::Approx(2.0).epsilon(1e-7));
    }
}

TEST_CASE("oblique camera over flat terrain matches analytic ray-plane depths") {
    const TerrainModel t = flat_terrain();
    CameraModel cam;  // pitch -30 deg, 64x48, d_thresh 20
    const Pose2 pose{{10.0, 30.0}, 0.0};

    const DepthImage img = render_depth_image(t, pose, cam);
    int checked = 0;
    for (int j = 0; j < cam.image_h; ++j) {
        for (int i = 0; i < cam.image_w; ++i) {
            const double expected = expected_plane_depth(cam, j, i, cam.height_above_ground);
            const double got = img.depth.at(j, i);
            if (expected > 0.0 && expected <= cam.max_depth) {
                REQUIRE(DepthImage::is_valid(got));
                CHECK(got == doctest::Approx(expected).epsilon(1e-6));
                ++checked;
            } else {
                CHECK(!DepthImage::is_valid(got));
            }
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("center pixel at pitch theta: depth = altitude / sin(theta)") {
    const TerrainModel t = flat_terrain();
    CameraModel cam;
    cam.image_w = 65;  // odd dims put a pixel exactly on the optical axis
    cam.image_h = 49;
    cam.pitch = -M_PI / 6.0;
    cam.height_above_ground = 1.5;
    const DepthImage img = render_depth_image(t, {{10.0, 30.0}, 0.3}, cam);
    const double center = img.depth.at(24, 32);
    REQUIRE(DepthImage::is_valid(center));
    CHECK(center == doctest::Approx(1.5 / std::sin(M_PI / 6.0)).epsilon(1e-7));
}

TEST_CASE("intersections beyond d_thresh are filtered out") {
    const TerrainModel t = flat_terrain();
    CameraModel cam;
    cam.max_depth = 0.5;  // nearest ground hit is well beyond this
    const DepthImage img = render_depth_image(t, {{30.0, 30.0}, 0.0}, cam);
    CHECK(img.valid_count() == 0);
}

TEST_CASE("camera at the surface is rejected") {
    const TerrainModel t = flat_terrain();
    CameraModel cam;
    cam.height_above_ground = 0.0;
    CHECK_THROWS_AS(render_depth_image(t, {{30.0, 30.0}, 0.0}, cam), std::runtime_error);
    CHECK_THROWS_AS(render_depth_image(t, {{-5.0, 30.0}, 0.0}, CameraModel{}),
                    std::out_of_range);
}

TEST_CASE("project_point_cloud: empty image, point count, flat-ground z") {
    CameraModel cam;
    DepthImage empty;
    empty.depth = Grid<double>(cam.image_h, cam.image_w, DepthImage::invalid());
    CHECK(project_point_cloud(empty, cam).points.empty());

    const TerrainModel t = flat_terrain();
    CameraModel down;
    down.pitch = -M_PI / 2.0;
    down.height_above_ground = 2.0;
    const DepthImage img = render_depth_image(t, {{30.0, 30.0}, 0.0}, down);
    const PointCloud cloud = project_point_cloud(img, down);
    CHECK(static_cast<int>(cloud.points.size()) == img.valid_count());
    for (const Vec3& p : cloud.points) CHECK(std::fabs(p.z) < 1e-6);
}

TEST_CASE("build_local_costmap: zero plane, exact variance, plane slope") {
    const Pose2 pose{{0.0, 0.0}, 0.0};

    SUBCASE("all points on z = 0: every occupied cell costs zero") {
        PointCloud cloud;
        for (double x = 0.3; x < 15.0; x += 0.5)
            for (double y = -5.0; y < 5.0; y += 0.5) cloud.points.push_back({x, y, 0.0});
        const LocalCostMap m = build_local_costmap(cloud, pose, {1.0, 10.0}, 20.0);
        int occupied = 0;
        for (int r = 0; r < m.cost.rows(); ++r)
            for (int c = 0; c < m.cost.cols(); ++c)
                if (m.observed.at(r, c)) {
                    ++occupied;
                    CHECK(m.cost.at(r, c) == 0.0);
                }
        CHECK(occupied > 0);
    }

    SUBCASE("population variance of {0, 1} is exactly 0.25") {
        PointCloud cloud;
        cloud.points.push_back({3.5, 0.2, 0.0});
        cloud.points.push_back({3.6, 0.3, 1.0});
        const LocalCostMap m = build_local_costmap(cloud, pose, {0.0, 1.0}, 20.0);
        const auto cell = m.cell_of_local({3.5, 0.25});
        REQUIRE(cell.has_value());
        CHECK(m.observed.at(cell->r, cell->c) == 1);
        CHECK(m.cost.at(cell->r, cell->c) == 0.25);
    }

    SUBCASE("points on plane z = x: gradient term within 5% of slope 1") {
        PointCloud cloud;
        for (double x = 0.1; x < 10.0; x += 0.21)
            for (double y = -3.0; y < 3.0; y += 0.37) cloud.points.push_back({x, y, x});
        const LocalCostMap m = build_local_costmap(cloud, pose, {1.0, 0.0}, 20.0);
        for (int r = 0; r < 10; ++r)
            for (int c = 0; c < m.cost.cols(); ++c)
                if (m.observed.at(r, c))
                    CHECK(m.cost.at(r, c) == doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("adding a spread point never lowers a variance-only cell cost") {
    const Pose2 pose{{0.0, 0.0}, 0.0};
    PointCloud cloud;
    cloud.points.push_back({2.5, 0.1, 0.0});
    cloud.points.push_back({2.5, 0.2, 1.0});
    const LocalCostMap before = build_local_costmap(cloud, pose, {0.0, 1.0}, 20.0);
    cloud.points.push_back({2.5, 0.3, 3.0});
    const LocalCostMap after = build_local_costmap(cloud, pose, {0.0, 1.0}, 20.0);
    const auto cell = before.cell_of_local({2.5, 0.2});
    REQUIRE(cell.has_value());
    CHECK(after.cost.at(cell->r, cell->c) >= before.cost.at(cell->r, cell->c));
    CHECK(after.cost.at(cell->r, cell->c) == doctest::Approx(14.0 / 9.0));
}

TEST_CASE("costmap shape and masks: 20 x 40 cells, unobserved flagged") {
    const LocalCostMap m = build_local_costmap(PointCloud{}, {{5.0, 5.0}, 1.0}, {1.0, 10.0}, 20.0);
    CHECK(m.cost.rows() == 20);
    CHECK(m.cost.cols() == 40);
    for (auto f : m.observed.data()) CHECK(f == 0);
    for (double c : m.cost.data()) CHECK(c == 0.0);  // costs exist but masked

    // Identical clouds at different capture poses produce identical maps.
    PointCloud cloud;
    cloud.points.push_back({4.2, 1.0, 0.3});
    cloud.points.push_back({4.4, 1.2, 0.1});
    const LocalCostMap a = build_local_costmap(cloud, {{0.0, 0.0}, 0.0}, {1.0, 10.0}, 20.0);
    const LocalCostMap b = build_local_costmap(cloud, {{37.0, 12.0}, 2.1}, {1.0, 10.0}, 20.0);
    CHECK(a.cost.data() == b.cost.data());
    CHECK(a.observed.data() == b.observed.data());
}

TEST_CASE("all produced costs are finite and nonnegative") {
    const TerrainModel t = flat_terrain(60.0, 60.0);
    CameraModel cam;
    const Pose2 pose{{20.0, 30.0}, 0.4};
    const DepthImage img = render_depth_image(t, pose, cam);
    const LocalCostMap m =
        build_local_costmap(project_point_cloud(img, cam), pose, {1.0, 10.0}, cam.max_depth);
    for (int r = 0; r < m.cost.rows(); ++r)
        for (int c = 0; c < m.cost.cols(); ++c)
            if (m.observed.at(r, c)) {
                CHECK(std::isfinite(m.cost.at(r, c)));
                CHECK(m.cost.at(r, c) >= 0.0);
            }
}

#include "rovernav/sensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rovernav {

namespace {

constexpr double kRayStepM = 0.05;
constexpr int kBisectIters = 30;

struct CameraRig {
    Vec3 origin;   // world
    Vec3 forward;  // optical axis, unit
    Vec3 right;
    Vec3 down;
    double fx, fy;
};

CameraRig make_rig(const TerrainModel& t, const Pose2& pose, const CameraModel& cam) {
    if (cam.image_h < 2 || cam.image_w < 2)
        throw std::invalid_argument("camera: image dimensions must be >= 2");
    if (cam.hfov <= 0.0 || cam.hfov >= M_PI)
        throw std::invalid_argument("camera: hfov must be in (0, pi)");
    if (cam.max_depth <= 0.0)
        throw std::invalid_argument("camera: max_depth must be positive");

    const double ground_z = height_at(t, pose.position);

    CameraRig rig;
    rig.origin = {pose.position.x, pose.position.y, ground_z + cam.height_above_ground};

    // Rover frame: x forward, y left, z up. Camera forward pitched about
    // the rover's y axis, then the whole rig yawed by the heading.
    const double cp = std::cos(cam.pitch);
    const double sp = std::sin(cam.pitch);
    const Vec3 fwd_local{cp, 0.0, sp};
    const Vec3 right_local{0.0, -1.0, 0.0};
    auto yaw = [&](const Vec3& v) {
        const Vec2 xy = rotate({v.x, v.y}, pose.heading);
        return Vec3{xy.x, xy.y, v.z};
    };
    rig.forward = yaw(fwd_local);
    rig.right = yaw(right_local);
    rig.down = rig.forward.cross(rig.right);

    rig.fx = (cam.image_w / 2.0) / std::tan(cam.hfov / 2.0);
    rig.fy = rig.fx;  // square pixels
    return rig;
}

}  // namespace

DepthImage render_depth_image(const TerrainModel& t, const Pose2& pose, const CameraModel& cam) {
    if (!t.inside(pose.position))
        throw std::out_of_range("render_depth_image: pose outside terrain extent");
    const CameraRig rig = make_rig(t, pose, cam);
    if (rig.origin.z <= height_at(t, pose.position))
        throw std::runtime_error("render_depth_image: camera at or below terrain surface");

    DepthImage img;
    img.depth = Grid<double>(cam.image_h, cam.image_w, DepthImage::invalid());

    auto above_surface = [&](const Vec3& p) -> std::optional<double> {
        const Vec2 xy{p.x, p.y};
        if (!t.inside(xy)) return std::nullopt;
        return p.z - height_at(t, xy);
    };

    for (int j = 0; j < cam.image_h; ++j) {
        for (int i = 0; i < cam.image_w; ++i) {
            const double ux = (i + 0.5 - cam.image_w / 2.0) / rig.fx;
            const double uy = (j + 0.5 - cam.image_h / 2.0) / rig.fy;
            // Unnormalized ray: origin + z * raw traces optical depth z.
            const Vec3 raw = rig.forward + rig.right * ux + rig.down * uy;
            const Vec3 dir = raw.normalized();
            const double cos_axis = dir.dot(rig.forward);

            // March in Euclidean arc length until the surface is crossed,
            // the optical depth cap is exceeded, or the ray leaves the map.
            const double s_max = cam.max_depth / cos_axis;
            double s_prev = 0.0;
            double hit_s = -1.0;
            for (double s = kRayStepM; s <= s_max + kRayStepM; s += kRayStepM) {
                const double s_clip = std::min(s, s_max);
                const Vec3 p = rig.origin + dir * s_clip;
                const auto g = above_surface(p);
                if (!g) break;  // exited the extent
                if (*g <= 0.0) {
                    // Bisect [s_prev, s_clip] down to the crossing.
                    double lo = s_prev, hi = s_clip;
                    for (int it = 0; it < kBisectIters; ++it) {
                        const double mid = 0.5 * (lo + hi);
                        const auto gm = above_surface(rig.origin + dir * mid);
                        if (gm && *gm > 0.0)
                            lo = mid;
                        else
                            hi = mid;
                    }
                    hit_s = 0.5 * (lo + hi);
                    break;
                }
                s_prev = s_clip;
                if (s_clip >= s_max) break;
            }

            if (hit_s >= 0.0) {
                const double z = hit_s * cos_axis;
                if (z > 0.0 && z <= cam.max_depth) img.depth.at(j, i) = z;
            }
        }
    }
    return img;
}

PointCloud project_point_cloud(const DepthImage& d, const CameraModel& cam) {
    if (d.depth.rows() != cam.image_h || d.depth.cols() != cam.image_w)
        throw std::invalid_argument("project_point_cloud: image/camera dimension mismatch");

    const double fx = (cam.image_w / 2.0) / std::tan(cam.hfov / 2.0);
    const double fy = fx;
    const double cp = std::cos(cam.pitch);
    const double sp = std::sin(cam.pitch);
    const Vec3 fwd{cp, 0.0, sp};
    const Vec3 right{0.0, -1.0, 0.0};
    const Vec3 down = fwd.cross(right);
    const Vec3 origin{0.0, 0.0, cam.height_above_ground};

    PointCloud cloud;
    cloud.points.reserve(static_cast<size_t>(d.valid_count()));
    for (int j = 0; j < cam.image_h; ++j) {
        for (int i = 0; i < cam.image_w; ++i) {
            const double z = d.depth.at(j, i);
            if (!DepthImage::is_valid(z)) continue;
            const double ux = (i + 0.5 - cam.image_w / 2.0) / fx;
            const double uy = (j + 0.5 - cam.image_h / 2.0) / fy;
            const Vec3 raw = fwd + right * ux + down * uy;
            cloud.points.push_back(origin + raw * z);
        }
    }
    return cloud;
}

LocalCostMap build_local_costmap(const PointCloud& p, const Pose2& pose,
                                 const CostmapWeights& weights, double d_thresh) {
    if (weights.w_grad < 0.0 || weights.w_var < 0.0)
        throw std::invalid_argument("build_local_costmap: weights must be nonnegative");
    if (d_thresh <= 0.0)
        throw std::invalid_argument("build_local_costmap: d_thresh must be positive");

    LocalCostMap m;
    m.cell_m = 1.0;
    const int rows = static_cast<int>(std::ceil(d_thresh / m.cell_m));
    const int cols = 2 * rows;
    m.half_width_m = rows * m.cell_m;
    m.cost = Grid<double>(rows, cols, 0.0);
    m.observed = Grid<uint8_t>(rows, cols, 0);
    m.capture_pose = pose;

    // Bucket point indices per cell.
    std::vector<std::vector<int>> buckets(static_cast<size_t>(rows) * cols);
    for (int k = 0; k < static_cast<int>(p.points.size()); ++k) {
        const Vec3& pt = p.points[k];
        const auto cell = m.cell_of_local({pt.x, pt.y});
        if (!cell) continue;
        buckets[static_cast<size_t>(cell->r) * cols + cell->c].push_back(k);
    }

    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const auto& idx = buckets[static_cast<size_t>(r) * cols + c];
            if (idx.empty()) continue;
            const int n = static_cast<int>(idx.size());

            double mean_x = 0, mean_y = 0, mean_z = 0;
            for (int k : idx) {
                mean_x += p.points[k].x;
                mean_y += p.points[k].y;
                mean_z += p.points[k].z;
            }
            mean_x /= n;
            mean_y /= n;
            mean_z /= n;

            double var = 0.0;
            double sxx = 0, sxy = 0, syy = 0, sxz = 0, syz = 0;
            for (int k : idx) {
                const double dx = p.points[k].x - mean_x;
                const double dy = p.points[k].y - mean_y;
                const double dz = p.points[k].z - mean_z;
                var += dz * dz;
                sxx += dx * dx;
                sxy += dx * dy;
                syy += dy * dy;
                sxz += dx * dz;
                syz += dy * dz;
            }
            var /= n;  // population variance

            double slope = 0.0;
            if (n >= 3) {
                const double det = sxx * syy - sxy * sxy;
                const double scale = std::max(sxx, syy);
                if (det > 1e-12 * scale * scale && scale > 0.0) {
                    const double a = (sxz * syy - syz * sxy) / det;
                    const double b = (syz * sxx - sxz * sxy) / det;
                    slope = std::hypot(a, b);
                }
            }

            m.cost.at(r, c) = weights.w_grad * slope + weights.w_var * var;
            m.observed.at(r, c) = 1;
        }
    }
    return m;
}

}  // namespace rovernav

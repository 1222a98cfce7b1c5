#include "rovernav/config.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace rovernav {

namespace {

using nlohmann::json;

Vec2 parse_vec2(const json& j, const char* key) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument(std::string("config: ") + key +
                                    " must be a 2-element array");
    return {j[0].get<double>(), j[1].get<double>()};
}

RockClass parse_rock_class(const std::string& s) {
    if (s == "small") return RockClass::small;
    if (s == "medium") return RockClass::medium;
    throw std::invalid_argument("config: rock class must be \"small\" or \"medium\"");
}

template <typename T>
void maybe(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

void parse_sim_overrides(const json& j, SimConfig& cfg) {
    maybe(j, "camera_height_m", cfg.camera.height_above_ground);
    maybe(j, "camera_pitch_rad", cfg.camera.pitch);
    maybe(j, "camera_hfov_rad", cfg.camera.hfov);
    maybe(j, "image_h", cfg.camera.image_h);
    maybe(j, "image_w", cfg.camera.image_w);
    maybe(j, "d_thresh_m", cfg.camera.max_depth);

    maybe(j, "w_grad", cfg.costmap_weights.w_grad);
    maybe(j, "w_var", cfg.costmap_weights.w_var);

    maybe(j, "n_rays", cfg.features.n_rays);
    maybe(j, "patch_size_m", cfg.features.patch_size_m);
    maybe(j, "ray_height_m", cfg.features.ray_height_m);

    maybe(j, "n_levels", cfg.clusters.n_levels);
    maybe(j, "min_region_px", cfg.clusters.min_region_px);

    maybe(j, "lambda", cfg.fusion.lambda);
    maybe(j, "k_min", cfg.fusion.k_min);
    maybe(j, "prior_gain", cfg.fusion.prior_gain);
    maybe(j, "prior_offset", cfg.fusion.prior_offset);

    maybe(j, "speed_mps", cfg.arcs.speed);
    maybe(j, "omega_max", cfg.arcs.omega_max);
    maybe(j, "n_arcs", cfg.arcs.n_arcs);
    maybe(j, "arc_duration_s", cfg.arcs.duration);
    maybe(j, "arc_samples", cfg.arcs.n_samples);
    maybe(j, "alpha", cfg.arcs.weights.alpha);
    maybe(j, "beta", cfg.arcs.weights.beta);
    maybe(j, "gamma", cfg.arcs.weights.gamma);
    maybe(j, "c_unobs", cfg.arcs.c_unobs);

    maybe(j, "topdown_m_per_px", cfg.topdown_m_per_px);
    maybe(j, "lookahead_m", cfg.lookahead_m);
    maybe(j, "goal_directed_arcs", cfg.goal_directed_arcs);
    maybe(j, "cycle_s", cfg.cycle_s);
    maybe(j, "substep_s", cfg.substep_s);
    maybe(j, "goal_radius_m", cfg.goal_radius_m);
    maybe(j, "stuck_window_s", cfg.stuck_window_s);
    maybe(j, "stuck_displacement_m", cfg.stuck_displacement_m);
    maybe(j, "timeout_s", cfg.timeout_s);
    maybe(j, "clearance_m", cfg.clearance_m);
}

}  // namespace

ScenarioFile load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot read scenario file: " + path);

    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config: parse error in " + path + ": " + e.what());
    }

    ScenarioFile out;
    ScenarioSpec& s = out.scenario;
    if (j.contains("seed")) s.seed = j.at("seed").get<uint64_t>();
    if (j.contains("extent_m")) s.extent = parse_vec2(j.at("extent_m"), "extent_m");
    if (j.contains("start")) s.start = parse_vec2(j.at("start"), "start");
    if (j.contains("goal")) s.goal = parse_vec2(j.at("goal"), "goal");
    maybe(j, "roughness", s.roughness);
    maybe(j, "terrain_res_m", s.terrain_res_m);

    if (j.contains("rock_field") && !j.at("rock_field").is_null()) {
        const json& f = j.at("rock_field");
        RockFieldSpec field;
        const json& rect = f.at("rect");
        if (!rect.is_array() || rect.size() != 4)
            throw std::invalid_argument("config: rock_field.rect must be [x0, y0, x1, y1]");
        field.rect = {{rect[0].get<double>(), rect[1].get<double>()},
                      {rect[2].get<double>(), rect[3].get<double>()}};
        field.rock_class = parse_rock_class(f.at("class").get<std::string>());
        field.density = f.at("density").get<double>();
        maybe(f, "placement_margin_m", field.placement_margin_m);
        s.rock_field = field;
    }

    if (j.contains("craters")) {
        for (const json& c : j.at("craters")) {
            CraterSpec crater;
            crater.center = parse_vec2(c.at("center"), "crater center");
            crater.radius = c.at("radius").get<double>();
            crater.depth = c.at("depth").get<double>();
            s.craters.push_back(crater);
        }
    }

    if (j.contains("sim")) parse_sim_overrides(j.at("sim"), out.sim);

    validate_scenario(s);
    return out;
}

}  // namespace rovernav

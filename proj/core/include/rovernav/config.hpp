#pragma once

#include <string>

#include "rovernav/sim.hpp"
#include "rovernav/terrain.hpp"

namespace rovernav {

/// Parsed scenario file: the world description plus any loop-parameter
/// overrides from the optional "sim" block.
struct ScenarioFile {
    ScenarioSpec scenario;
    SimConfig sim;
};

/// Loads a scenario from a JSON config file.
///
/// Recognized top-level keys: seed, extent_m, start, goal,
/// rock_field {rect, class, density}, craters [{center, radius, depth}],
/// roughness, terrain_res_m, and an optional "sim" object overriding loop
/// parameters (see README for the full key list).
ScenarioFile load_scenario_file(const std::string& path);

}  // namespace rovernav

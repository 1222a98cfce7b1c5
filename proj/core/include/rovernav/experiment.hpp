#pragma once

#include <string>
#include <vector>

#include "rovernav/sim.hpp"

namespace rovernav {

/// Multi-run comparison protocol: n_runs per mode with seeds
/// seed_base .. seed_base + n_runs - 1, per-run metric/trace files, and a
/// per-mode mean summary.
struct ExperimentSpec {
    std::string scenario_path;
    std::vector<PlanMode> modes{PlanMode::baseline, PlanMode::replan};
    int n_runs = 1;
    uint64_t seed_base = 0;
    bool override_seed = false;  // false: use the scenario file's seed as base
    std::string out_dir;
    bool dump_costmaps = false;
};

struct ModeSummary {
    PlanMode mode = PlanMode::baseline;
    int runs = 0;
    double mean_total_path_cost = 0.0;
    double mean_collisions = 0.0;
    double mean_time_s = 0.0;
    double mean_distance_m = 0.0;
    int reached = 0;
    int stuck = 0;
    int timeout = 0;
};

/// Executes every run, writes <mode>_seed<S>_{metrics.txt,trace.csv} plus
/// summary.txt under out_dir, and returns the per-mode summaries. Throws on
/// unreadable config or unwritable output.
std::vector<ModeSummary> run_experiment(const ExperimentSpec& e);

/// The aligned table printed by the CLI; also the content of summary.txt.
std::string format_summary(const std::vector<ModeSummary>& summaries);

}  // namespace rovernav

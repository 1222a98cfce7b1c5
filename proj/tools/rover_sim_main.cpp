// Scenario runner: executes baseline / replan runs of a scenario file and
// reports the per-mode Table-style metric means.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rovernav/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"rover navigation scenario runner"};

    std::string scenario;
    std::string mode = "both";
    int runs = 1;
    uint64_t seed = 0;
    bool seed_set = false;
    std::string out_dir = "out";
    bool dump_costmaps = false;

    app.add_option("--scenario", scenario, "scenario config file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    app.add_option("--mode", mode, "baseline|replan|both")
        ->check(CLI::IsMember({"baseline", "replan", "both"}));
    app.add_option("--runs", runs, "runs per mode")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "base seed (default: scenario file seed)")
        ->each([&](const std::string&) { seed_set = true; });
    app.add_option("--out", out_dir, "output directory");
    app.add_flag("--dump-costmaps", dump_costmaps, "write per-cycle costmap snapshots");

    CLI11_PARSE(app, argc, argv);

    rovernav::ExperimentSpec spec;
    spec.scenario_path = scenario;
    spec.n_runs = runs;
    spec.seed_base = seed;
    spec.override_seed = seed_set;
    spec.out_dir = out_dir;
    spec.dump_costmaps = dump_costmaps;
    spec.modes.clear();
    if (mode == "baseline" || mode == "both") spec.modes.push_back(rovernav::PlanMode::baseline);
    if (mode == "replan" || mode == "both") spec.modes.push_back(rovernav::PlanMode::replan);

    try {
        const auto summaries = rovernav::run_experiment(spec);
        std::cout << rovernav::format_summary(summaries);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

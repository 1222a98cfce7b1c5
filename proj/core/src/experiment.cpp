#include "rovernav/experiment.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rovernav/config.hpp"
#include "rovernav/io.hpp"

namespace rovernav {

namespace {

std::string run_stem(PlanMode mode, uint64_t seed) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_seed%" PRIu64, mode_name(mode), seed);
    return buf;
}

}  // namespace

std::vector<ModeSummary> run_experiment(const ExperimentSpec& e) {
    if (e.n_runs < 1) throw std::invalid_argument("experiment: n_runs must be >= 1");
    if (e.modes.empty()) throw std::invalid_argument("experiment: no modes selected");

    const ScenarioFile file = load_scenario_file(e.scenario_path);
    const uint64_t seed_base = e.override_seed ? e.seed_base : file.scenario.seed;

    std::error_code ec;
    std::filesystem::create_directories(e.out_dir, ec);
    if (ec || !std::filesystem::is_directory(e.out_dir))
        throw std::runtime_error("experiment: cannot create output dir: " + e.out_dir);

    std::vector<ModeSummary> summaries;
    for (PlanMode mode : e.modes) {
        ModeSummary sum;
        sum.mode = mode;
        sum.runs = e.n_runs;
        for (int i = 0; i < e.n_runs; ++i) {
            ScenarioSpec spec = file.scenario;
            spec.seed = seed_base + static_cast<uint64_t>(i);

            const std::string stem = e.out_dir + "/" + run_stem(mode, spec.seed);
            std::optional<std::string> dump;
            if (e.dump_costmaps) dump = stem + "_costmaps";

            const RunResult result = run_scenario(spec, mode, file.sim, dump);
            write_metrics(stem + "_metrics.txt", result.metrics);
            write_trace_csv(stem + "_trace.csv", result.trace);

            sum.mean_total_path_cost += result.metrics.total_path_cost;
            sum.mean_collisions += result.metrics.n_collisions;
            sum.mean_time_s += result.metrics.total_time_s;
            sum.mean_distance_m += result.metrics.total_distance_m;
            switch (result.metrics.outcome) {
                case Outcome::reached: ++sum.reached; break;
                case Outcome::stuck: ++sum.stuck; break;
                case Outcome::timeout: ++sum.timeout; break;
            }
        }
        sum.mean_total_path_cost /= e.n_runs;
        sum.mean_collisions /= e.n_runs;
        sum.mean_time_s /= e.n_runs;
        sum.mean_distance_m /= e.n_runs;
        summaries.push_back(sum);
    }

    std::ofstream out(e.out_dir + "/summary.txt");
    if (!out) throw std::runtime_error("experiment: cannot write summary.txt");
    out << format_summary(summaries);
    return summaries;
}

std::string format_summary(const std::vector<ModeSummary>& summaries) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-10s %5s %16s %12s %12s %14s %18s\n", "mode", "runs",
                  "mean_path_cost", "mean_colls", "mean_time_s", "mean_dist_m",
                  "reached/stuck/to");
    out << line;
    for (const ModeSummary& s : summaries) {
        char rst[32];
        std::snprintf(rst, sizeof(rst), "%d/%d/%d", s.reached, s.stuck, s.timeout);
        std::snprintf(line, sizeof(line), "%-10s %5d %16.4f %12.4f %12.2f %14.2f %18s\n",
                      mode_name(s.mode), s.runs, s.mean_total_path_cost, s.mean_collisions,
                      s.mean_time_s, s.mean_distance_m, rst);
        out << line;
    }
    return out.str();
}

}  // namespace rovernav

#pragma once

#include <string>

#include "rovernav/clustering.hpp"
#include "rovernav/features.hpp"
#include "rovernav/fusion.hpp"
#include "rovernav/sensor.hpp"
#include "rovernav/sim.hpp"

namespace rovernav {

/// Row-major CSV; cells with mask == 0 are written as "nan".
void write_grid_csv(const std::string& path, const Grid<double>& grid,
                    const Grid<uint8_t>* mask = nullptr);

void write_local_costmap_csv(const std::string& path, const LocalCostMap& lcm);

/// Two files: <stem>_cost.csv and <stem>_prov.csv (P/O/I per cell).
void write_global_costmap_csv(const std::string& stem, const GlobalCostMap& g);

/// Binary PPM (P6) plus a "<path>.georef" sidecar with origin and m/pixel.
void write_topdown_ppm(const std::string& path, const TopDownImage& img);

/// Indexed cluster image with a deterministic palette.
void write_cluster_ppm(const std::string& path, const ClusterMap& cm);

void write_trace_csv(const std::string& path, const RunTrace& trace);

void write_metrics(const std::string& path, const RunMetrics& m);

const char* outcome_name(Outcome o);
const char* mode_name(PlanMode m);

}  // namespace rovernav

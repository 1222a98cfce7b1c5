#pragma once

#include "rovernav/features.hpp"
#include "rovernav/grid.hpp"

namespace rovernav {

struct ClusterConfig {
    int n_levels = 6;        // luminance quantization bins over [0, 1]
    int min_region_px = 25;  // smaller image components merge into a neighbor
};

/// Partition of the global region into regions of visual similarity,
/// aligned to the global costmap grid. Every cell carries exactly one id in
/// [0, n_clusters); each id is one 4-connected component.
struct ClusterMap {
    Grid<int> labels;
    int n_clusters = 0;
    GridFrame frame;
};

/// Quantizes per-pixel luminance into n_levels equal-width bins over [0,1],
/// takes 4-connected components, merges components below min_region_px into
/// their largest neighbor, then resamples to out_res_m cells by majority
/// vote (component structure re-extracted afterwards so ids stay connected).
ClusterMap cluster_regions(const TopDownImage& img, const ClusterConfig& cfg,
                           double out_res_m = 1.0);

}  // namespace rovernav

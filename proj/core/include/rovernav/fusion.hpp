#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rovernav/clustering.hpp"
#include "rovernav/features.hpp"
#include "rovernav/sensor.hpp"

namespace rovernav {

/// One local cost observation lifted into the world frame.
struct CostSample {
    Vec2 position;                // world frame, m
    double cost = 0.0;            // observed cell cost, >= 0
    std::vector<double> feature;  // terrain descriptor at `position`
    double timestamp = 0.0;       // capture time, s
};

/// Ridge-regularized linear model over standardized terrain features.
///
/// Fit minimizes  1/2 sum_i (c_i - w' f(x_i))^2 + 1/2 lambda ||w||^2
/// where f is the per-dimension standardized feature. Dimensions with zero
/// variance across the fit set pass through unchanged (offset 0, scale 1),
/// which lets constant feature blocks act as an intercept.
struct RegressionModel {
    std::vector<double> weights;
    std::vector<double> offsets;
    std::vector<double> scales;
    double lambda = 0.0;
    int cluster_id = -1;

    double predict(std::span<const double> feature) const;
};

enum class CellProvenance : uint8_t { prior, observed, interpolated };

/// World-frame cost grid, 1 m cells, with per-cell provenance.
struct GlobalCostMap {
    Grid<double> cost;
    Grid<CellProvenance> provenance;
    GridFrame frame;
};

struct FusionConfig {
    double lambda = 1e-3;
    int k_min = 5;           // samples required before a cluster is fit
    double prior_gain = 1.0;    // a in cost = a * luminance + b
    double prior_offset = 0.0;  // b
};

/// cost = a * luminance + b at each 1 m cell center; all cells `prior`.
GlobalCostMap init_global_costmap(const TopDownImage& img, double gain, double offset,
                                  double out_res_m = 1.0);

/// One sample per observed local-costmap cell, positioned at the cell
/// center transformed by the capture pose. Cells whose feature patch exits
/// the terrain extent are dropped.
std::vector<CostSample> collect_cost_samples(const LocalCostMap& lcm, FeatureCache& features,
                                             double timestamp);

/// Fits the ridge model. Solved in dual form (n x n system) when the sample
/// count is below the feature dimension, primal normal equations otherwise.
RegressionModel fit_krr(std::span<const CostSample> samples, double lambda,
                        bool standardize = true);

/// Groups samples by containing cluster, fits clusters holding at least
/// k_min samples, and writes clamped predictions over every cell of those
/// clusters. Cells holding a direct observation always carry the observed
/// cost (latest by timestamp) and are never overwritten by interpolation;
/// clusters below k_min receive direct observations only.
GlobalCostMap update_global_costmap(const GlobalCostMap& g, const ClusterMap& clusters,
                                    std::span<const CostSample> samples,
                                    const FusionConfig& cfg, FeatureCache& features);

}  // namespace rovernav

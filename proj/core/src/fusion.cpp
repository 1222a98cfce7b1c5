#include "rovernav/fusion.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rovernav {

namespace {

constexpr double kStdTol = 1e-12;

}  // namespace

double RegressionModel::predict(std::span<const double> feature) const {
    if (feature.size() != weights.size())
        throw std::invalid_argument("RegressionModel::predict: dimension mismatch");
    double sum = 0.0;
    for (size_t j = 0; j < weights.size(); ++j)
        sum += weights[j] * (feature[j] - offsets[j]) / scales[j];
    return sum;
}

GlobalCostMap init_global_costmap(const TopDownImage& img, double gain, double offset,
                                  double out_res_m) {
    if (img.color.empty())
        throw std::invalid_argument("init_global_costmap: empty image");
    if (gain < 0.0 || offset < 0.0)
        throw std::invalid_argument("init_global_costmap: gain/offset must be nonnegative");

    const double world_w = img.color.cols() * img.frame.res;
    const double world_h = img.color.rows() * img.frame.res;
    const int cols = std::max(1, static_cast<int>(std::ceil(world_w / out_res_m)));
    const int rows = std::max(1, static_cast<int>(std::ceil(world_h / out_res_m)));

    GlobalCostMap g;
    g.frame = {out_res_m, {0.0, 0.0}};
    g.cost = Grid<double>(rows, cols, 0.0);
    g.provenance = Grid<CellProvenance>(rows, cols, CellProvenance::prior);

    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            // Point-sample the pixel containing the cell center.
            const Vec2 p = g.frame.center_of(r, c);
            int pr = std::min(img.color.rows() - 1,
                              static_cast<int>(std::floor(p.y / img.frame.res)));
            int pc = std::min(img.color.cols() - 1,
                              static_cast<int>(std::floor(p.x / img.frame.res)));
            const double lum = luminance(img.color.at(pr, pc));
            g.cost.at(r, c) = std::clamp(gain * lum + offset, 0.0, kUntraversableCost);
        }
    }
    return g;
}

std::vector<CostSample> collect_cost_samples(const LocalCostMap& lcm, FeatureCache& features,
                                             double timestamp) {
    std::vector<CostSample> samples;
    for (int r = 0; r < lcm.cost.rows(); ++r) {
        for (int c = 0; c < lcm.cost.cols(); ++c) {
            if (!lcm.observed.at(r, c)) continue;
            const Vec2 world = lcm.capture_pose.world_from_local(lcm.local_center_of(r, c));
            auto f = features.at_point(world);
            if (!f) continue;  // patch exits the global region
            CostSample s;
            s.position = world;
            s.cost = lcm.cost.at(r, c);
            s.feature = std::move(f->values);
            s.timestamp = timestamp;
            samples.push_back(std::move(s));
        }
    }
    return samples;
}

RegressionModel fit_krr(std::span<const CostSample> samples, double lambda, bool standardize) {
    if (samples.empty())
        throw std::invalid_argument("fit_krr: need at least one sample");
    if (lambda <= 0.0)
        throw std::invalid_argument("fit_krr: lambda must be positive");

    const int n = static_cast<int>(samples.size());
    const int d = static_cast<int>(samples[0].feature.size());
    for (const CostSample& s : samples) {
        if (static_cast<int>(s.feature.size()) != d)
            throw std::invalid_argument("fit_krr: inconsistent feature dimensions");
        if (!std::isfinite(s.cost))
            throw std::invalid_argument("fit_krr: non-finite cost");
        for (double v : s.feature)
            if (!std::isfinite(v)) throw std::invalid_argument("fit_krr: non-finite feature");
    }

    RegressionModel model;
    model.lambda = lambda;
    model.offsets.assign(d, 0.0);
    model.scales.assign(d, 1.0);

    if (standardize) {
        for (int j = 0; j < d; ++j) {
            double mean = 0.0;
            for (const CostSample& s : samples) mean += s.feature[j];
            mean /= n;
            double var = 0.0;
            for (const CostSample& s : samples) {
                const double dv = s.feature[j] - mean;
                var += dv * dv;
            }
            const double sd = std::sqrt(var / n);
            if (sd > kStdTol) {
                model.offsets[j] = mean;
                model.scales[j] = sd;
            }
            // zero-variance dimensions pass through unchanged
        }
    }

    Eigen::MatrixXd X(n, d);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        y(i) = samples[i].cost;
        for (int j = 0; j < d; ++j)
            X(i, j) = (samples[i].feature[j] - model.offsets[j]) / model.scales[j];
    }

    Eigen::VectorXd w(d);
    if (n < d) {
        // Dual: w = X' (X X' + lambda I)^-1 y
        Eigen::MatrixXd K = X * X.transpose();
        K.diagonal().array() += lambda;
        const Eigen::VectorXd alpha = K.ldlt().solve(y);
        w = X.transpose() * alpha;
    } else {
        // Primal normal equations: (X'X + lambda I) w = X'y
        Eigen::MatrixXd A = X.transpose() * X;
        A.diagonal().array() += lambda;
        w = A.ldlt().solve(X.transpose() * y);
    }

    model.weights.assign(w.data(), w.data() + d);
    return model;
}

GlobalCostMap update_global_costmap(const GlobalCostMap& g, const ClusterMap& clusters,
                                    std::span<const CostSample> samples,
                                    const FusionConfig& cfg, FeatureCache& features) {
    if (!g.cost.same_shape(clusters.labels))
        throw std::invalid_argument("update_global_costmap: costmap/cluster grid mismatch");

    GlobalCostMap out = g;
    if (samples.empty()) return out;

    // Group sample indices by containing cluster; remember the latest direct
    // observation per cell (samples are fed in timestamp order; the last
    // write wins on ties).
    std::vector<std::vector<int>> by_cluster(clusters.n_clusters);
    Grid<int8_t> has_obs(g.cost.rows(), g.cost.cols(), 0);
    Grid<double> obs_cost(g.cost.rows(), g.cost.cols(), 0.0);
    Grid<double> obs_time(g.cost.rows(), g.cost.cols(), 0.0);

    for (int i = 0; i < static_cast<int>(samples.size()); ++i) {
        const auto cell = clusters.frame.cell_of(samples[i].position);
        if (!clusters.labels.in_bounds(cell.r, cell.c)) continue;
        by_cluster[clusters.labels.at(cell.r, cell.c)].push_back(i);
        if (!has_obs.at(cell.r, cell.c) || samples[i].timestamp >= obs_time.at(cell.r, cell.c)) {
            has_obs.at(cell.r, cell.c) = 1;
            obs_cost.at(cell.r, cell.c) = samples[i].cost;
            obs_time.at(cell.r, cell.c) = samples[i].timestamp;
        }
    }

    // Interpolate over clusters with enough support.
    for (int cid = 0; cid < clusters.n_clusters; ++cid) {
        if (static_cast<int>(by_cluster[cid].size()) < cfg.k_min) continue;

        std::vector<CostSample> cluster_samples;
        cluster_samples.reserve(by_cluster[cid].size());
        for (int i : by_cluster[cid]) cluster_samples.push_back(samples[i]);
        RegressionModel model = fit_krr(cluster_samples, cfg.lambda);
        model.cluster_id = cid;

        for (int r = 0; r < out.cost.rows(); ++r) {
            for (int c = 0; c < out.cost.cols(); ++c) {
                if (clusters.labels.at(r, c) != cid) continue;
                if (has_obs.at(r, c)) continue;  // observations trump interpolation
                const std::vector<double>* f = features.at_cell(r, c);
                if (!f) continue;  // feature patch exits the region; keep prior
                const double pred = std::clamp(model.predict(*f), 0.0, kUntraversableCost);
                out.cost.at(r, c) = pred;
                out.provenance.at(r, c) = CellProvenance::interpolated;
            }
        }
    }

    // Direct observations are written for every cluster, fitted or not.
    for (int r = 0; r < out.cost.rows(); ++r) {
        for (int c = 0; c < out.cost.cols(); ++c) {
            if (!has_obs.at(r, c)) continue;
            out.cost.at(r, c) = std::clamp(obs_cost.at(r, c), 0.0, kUntraversableCost);
            out.provenance.at(r, c) = CellProvenance::observed;
        }
    }
    return out;
}

}  // namespace rovernav

#include "rovernav/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace rovernav {

namespace {

const int kDr[4] = {-1, 1, 0, 0};
const int kDc[4] = {0, 0, -1, 1};

/// 4-connected components of equal values; labels assigned in scan order.
Grid<int> connected_components(const Grid<int>& values, int& n_out) {
    Grid<int> labels(values.rows(), values.cols(), -1);
    int next = 0;
    std::vector<std::pair<int, int>> stack;
    for (int r = 0; r < values.rows(); ++r) {
        for (int c = 0; c < values.cols(); ++c) {
            if (labels.at(r, c) != -1) continue;
            const int v = values.at(r, c);
            labels.at(r, c) = next;
            stack.push_back({r, c});
            while (!stack.empty()) {
                auto [cr, cc] = stack.back();
                stack.pop_back();
                for (int k = 0; k < 4; ++k) {
                    const int nr = cr + kDr[k];
                    const int nc = cc + kDc[k];
                    if (!values.in_bounds(nr, nc)) continue;
                    if (labels.at(nr, nc) != -1 || values.at(nr, nc) != v) continue;
                    labels.at(nr, nc) = next;
                    stack.push_back({nr, nc});
                }
            }
            ++next;
        }
    }
    n_out = next;
    return labels;
}

}  // namespace

ClusterMap cluster_regions(const TopDownImage& img, const ClusterConfig& cfg, double out_res_m) {
    if (cfg.n_levels < 2)
        throw std::invalid_argument("cluster_regions: n_levels must be >= 2");
    if (img.color.empty())
        throw std::invalid_argument("cluster_regions: empty image");
    if (out_res_m <= 0.0)
        throw std::invalid_argument("cluster_regions: output resolution must be positive");

    const int rows = img.color.rows();
    const int cols = img.color.cols();

    // 1. Quantize luminance.
    Grid<int> bins(rows, cols, 0);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const double lum = luminance(img.color.at(r, c));
            bins.at(r, c) = std::min(cfg.n_levels - 1,
                                     static_cast<int>(std::floor(lum * cfg.n_levels)));
        }

    // 2. Connected components on the quantized image.
    int n_comp = 0;
    Grid<int> labels = connected_components(bins, n_comp);

    // 3. Merge small components into their largest neighbor. Labels are
    //    tracked through a union-find-style remap so adjacency stays valid
    //    while components coalesce.
    std::vector<int> remap(n_comp);
    for (int i = 0; i < n_comp; ++i) remap[i] = i;
    auto resolve = [&](int id) {
        while (remap[id] != id) id = remap[id];
        return id;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<long long> sizes(n_comp, 0);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) ++sizes[resolve(labels.at(r, c))];

        // Neighbor sizes per live small component.
        std::map<int, std::map<int, long long>> neighbors;
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                const int a = resolve(labels.at(r, c));
                if (sizes[a] >= cfg.min_region_px) continue;
                for (int k = 0; k < 4; ++k) {
                    const int nr = r + kDr[k];
                    const int nc = c + kDc[k];
                    if (!labels.in_bounds(nr, nc)) continue;
                    const int b = resolve(labels.at(nr, nc));
                    if (b != a) neighbors[a][b] = sizes[b];
                }
            }
        }
        if (neighbors.empty()) break;

        // Smallest component first; merge into its largest neighbor
        // (ties toward the smaller id).
        int smallest = -1;
        for (const auto& [id, nbrs] : neighbors) {
            (void)nbrs;
            if (smallest == -1 || sizes[id] < sizes[smallest] ||
                (sizes[id] == sizes[smallest] && id < smallest))
                smallest = id;
        }
        const auto& nbrs = neighbors[smallest];
        int target = -1;
        long long target_size = -1;
        for (const auto& [id, sz] : nbrs) {
            if (sz > target_size) {
                target = id;
                target_size = sz;
            }
        }
        if (target >= 0) {
            remap[smallest] = target;
            changed = true;
        }
    }
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) labels.at(r, c) = resolve(labels.at(r, c));

    // 4. Majority-vote resample onto the output grid.
    const double world_w = cols * img.frame.res;
    const double world_h = rows * img.frame.res;
    const int out_cols = std::max(1, static_cast<int>(std::ceil(world_w / out_res_m)));
    const int out_rows = std::max(1, static_cast<int>(std::ceil(world_h / out_res_m)));
    Grid<int> voted(out_rows, out_cols, 0);
    {
        std::vector<std::map<int, int>> counts(static_cast<size_t>(out_rows) * out_cols);
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                const Vec2 p = img.frame.center_of(r, c);
                int oc = std::min(out_cols - 1, static_cast<int>(std::floor(p.x / out_res_m)));
                int orow = std::min(out_rows - 1, static_cast<int>(std::floor(p.y / out_res_m)));
                ++counts[static_cast<size_t>(orow) * out_cols + oc][labels.at(r, c)];
            }
        }
        for (int r = 0; r < out_rows; ++r) {
            for (int c = 0; c < out_cols; ++c) {
                const auto& cnt = counts[static_cast<size_t>(r) * out_cols + c];
                int best = 0, best_n = -1;
                for (const auto& [id, n] : cnt) {
                    if (n > best_n) {  // std::map iterates ids ascending; ties keep the smaller id
                        best = id;
                        best_n = n;
                    }
                }
                voted.at(r, c) = best;
            }
        }
    }

    // 5. Re-extract components so every final id is one connected region,
    //    compactly numbered in scan order.
    ClusterMap out;
    out.frame = {out_res_m, {0.0, 0.0}};
    out.labels = connected_components(voted, out.n_clusters);
    return out;
}

}  // namespace rovernav

#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "rovernav/clustering.hpp"
#include "rovernav/rng.hpp"

using namespace rovernav;

namespace {

TopDownImage make_image(int rows, int cols, double m_per_px = 1.0) {
    TopDownImage img;
    img.frame = {m_per_px, {0.0, 0.0}};
    img.color = Grid<Rgb>(rows, cols, {0.5, 0.5, 0.5});
    img.elevation = Grid<double>(rows, cols, 0.0);
    return img;
}

void check_partition(const ClusterMap& cm) {
    REQUIRE(cm.n_clusters >= 1);
    std::vector<int> counts(cm.n_clusters, 0);
    for (int v : cm.labels.data()) {
        REQUIRE(v >= 0);
        REQUIRE(v < cm.n_clusters);
        ++counts[v];
    }
    for (int n : counts) CHECK(n > 0);  // every id nonempty

    // Each id must be one 4-connected component.
    int n_comp = 0;
    const Grid<int> cc = oracles::flood_fill_labels(cm.labels, n_comp);
    CHECK(n_comp == cm.n_clusters);
}

bool same_partition(const Grid<int>& a, const Grid<int>& b) {
    std::map<int, int> fwd, bwd;
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) {
            const int la = a.at(r, c), lb = b.at(r, c);
            if (fwd.count(la) && fwd[la] != lb) return false;
            if (bwd.count(lb) && bwd[lb] != la) return false;
            fwd[la] = lb;
            bwd[lb] = la;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("uniform image yields exactly one cluster") {
    const TopDownImage img = make_image(30, 40);
    const ClusterMap cm = cluster_regions(img, {6, 25}, 1.0);
    CHECK(cm.n_clusters == 1);
    for (int v : cm.labels.data()) CHECK(v == 0);
    check_partition(cm);
}

TEST_CASE("two constant-intensity halves split along the straight boundary") {
    TopDownImage img = make_image(20, 30);
    for (int r = 0; r < 20; ++r)
        for (int c = 0; c < 30; ++c)
            img.color.at(r, c) = (c < 15) ? Rgb{0.2, 0.2, 0.2} : Rgb{0.8, 0.8, 0.8};
    const ClusterMap cm = cluster_regions(img, {6, 1}, 1.0);
    CHECK(cm.n_clusters == 2);
    for (int r = 0; r < 20; ++r) {
        CHECK(cm.labels.at(r, 0) == cm.labels.at(0, 0));
        CHECK(cm.labels.at(r, 29) == cm.labels.at(0, 29));
        CHECK(cm.labels.at(r, 0) != cm.labels.at(r, 29));
        CHECK(cm.labels.at(r, 14) != cm.labels.at(r, 15));
    }
    check_partition(cm);
}

TEST_CASE("random 3-tone image matches an independent flood-fill oracle") {
    Rng rng(404);
    const double tones[3] = {0.1, 0.45, 0.95};  // distinct bins at n_levels = 6
    for (int trial = 0; trial < 10; ++trial) {
        TopDownImage img = make_image(24, 24);
        Grid<int> tone_idx(24, 24, 0);
        for (int r = 0; r < 24; ++r)
            for (int c = 0; c < 24; ++c) {
                const int k = rng.uniform_int(0, 2);
                tone_idx.at(r, c) = k;
                img.color.at(r, c) = {tones[k], tones[k], tones[k]};
            }
        // min_region_px = 1: pure connected-components behavior.
        const ClusterMap cm = cluster_regions(img, {6, 1}, 1.0);
        int n_oracle = 0;
        const Grid<int> expected = oracles::flood_fill_labels(tone_idx, n_oracle);
        CHECK(cm.n_clusters == n_oracle);
        CHECK(same_partition(cm.labels, expected));
        check_partition(cm);
    }
}

TEST_CASE("small regions merge into their largest neighbor") {
    TopDownImage img = make_image(20, 20);
    img.color.at(10, 10) = {0.95, 0.95, 0.95};  // lone bright pixel
    const ClusterMap cm = cluster_regions(img, {6, 25}, 1.0);
    CHECK(cm.n_clusters == 1);
}

TEST_CASE("resampling by majority vote to coarser cells") {
    // 0.5 m pixels, 1 m output cells: each cell votes over 2x2 pixels.
    TopDownImage img = make_image(40, 40, 0.5);
    for (int r = 0; r < 40; ++r)
        for (int c = 0; c < 40; ++c)
            img.color.at(r, c) = (c < 20) ? Rgb{0.2, 0.2, 0.2} : Rgb{0.8, 0.8, 0.8};
    const ClusterMap cm = cluster_regions(img, {6, 1}, 1.0);
    CHECK(cm.labels.rows() == 20);
    CHECK(cm.labels.cols() == 20);
    CHECK(cm.n_clusters == 2);
    for (int r = 0; r < 20; ++r) CHECK(cm.labels.at(r, 4) != cm.labels.at(r, 15));
}

TEST_CASE("determinism and error paths") {
    TopDownImage img = make_image(15, 15);
    img.color.at(3, 3) = {0.9, 0.9, 0.9};
    const ClusterMap a = cluster_regions(img, {6, 2}, 1.0);
    const ClusterMap b = cluster_regions(img, {6, 2}, 1.0);
    CHECK(a.labels.data() == b.labels.data());
    CHECK(a.n_clusters == b.n_clusters);

    CHECK_THROWS_AS(cluster_regions(img, {1, 25}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(cluster_regions(TopDownImage{}, {6, 25}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(cluster_regions(img, {6, 25}, 0.0), std::invalid_argument);
}

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "lakm/geom.hpp"
#include "lakm/la_kmeans.hpp"
#include "lakm/metrics.hpp"
#include "lakm/predictor.hpp"
#include "test_util.hpp"

using namespace lakm;
using lakm::test::make_points;
using lakm::test::vec;

namespace {

std::pair<std::size_t, double> brute_force_select(const PointSet& cluster, const std::vector<Point>& cands,
                                                  double alpha) {
    const std::size_t m = cluster.size();
    const std::size_t keep =
        std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil((1.0 - alpha) * static_cast<double>(m) - 1e-9)), 1, m);
    std::size_t arg = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < cands.size(); ++c) {
        std::vector<std::pair<double, std::size_t>> d;
        for (std::size_t i = 0; i < m; ++i) d.emplace_back(geom::squared_dist(cluster.point(i), cands[c]), i);
        std::sort(d.begin(), d.end());
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < keep; ++j) idx.push_back(d[j].second);
        std::sort(idx.begin(), idx.end());
        double total = 0.0;
        for (auto i : idx) total += geom::squared_dist(cluster.point(i), cands[c]);
        if (total < best) {
            best = total;
            arg = c;
        }
    }
    return {arg, best};
}

CenterSet centroids_of(const PointSet& X, const Partition& p) {
    std::vector<Point> out;
    for (int c = 0; c < p.k; ++c) out.push_back(geom::centroid(X.select(p.members(c))));
    return CenterSet(std::move(out));
}

}  // namespace

TEST(KMeansTheorySizes, HandValues) {
    kmeans::Config cfg;
    cfg.alpha = 0.2;
    cfg.epsilon = 0.5;
    cfg.delta = 0.1;
    const auto s = kmeans::theory_sizes(cfg, 10);
    EXPECT_EQ(s.r_size, 10u);
    EXPECT_EQ(s.subset_size, 3u);
    EXPECT_EQ(s.trials, 17u);
    cfg.alpha = 0.0;
    cfg.epsilon = 1.0;
    const auto b = kmeans::theory_sizes(cfg, 10);
    EXPECT_EQ(b.r_size, 4u);
    EXPECT_EQ(b.subset_size, 1u);
}

TEST(KMeansConfig, Validation) {
    kmeans::Config cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.alpha = 0.5;
    EXPECT_THROW(cfg.validate(), Error);
    cfg.alpha = 0.1;
    cfg.epsilon = 1.5;
    EXPECT_THROW(cfg.validate(), Error);
    cfg.epsilon = 0.5;
    cfg.caps.max_r_size = 0;
    EXPECT_THROW(cfg.validate(), Error);
}

TEST(SubsetCentroids, HandValues) {
    Rng rng(1);
    const auto full = kmeans::subset_centroids(make_points({{0}, {2}, {4}}), 3, 100, rng);
    ASSERT_EQ(full.size(), 1u);
    EXPECT_EQ(full[0], vec({2}));
    const auto singles = kmeans::subset_centroids(make_points({{0}, {2}}), 1, 100, rng);
    ASSERT_EQ(singles.size(), 2u);
    EXPECT_EQ(singles[0], vec({0}));
    EXPECT_EQ(singles[1], vec({2}));
    const auto many = kmeans::subset_centroids(test::random_points(10, 2, 1.0, rng), 3, 1000, rng);
    EXPECT_EQ(many.size(), 120u);
    EXPECT_EQ(kmeans::subset_centroids(test::random_points(10, 2, 1.0, rng), 3, 50, rng).size(), 50u);
    EXPECT_THROW(kmeans::subset_centroids(make_points({{0}}), 2, 10, rng), Error);
    EXPECT_THROW(kmeans::subset_centroids(make_points({{0}}), 0, 10, rng), Error);
}

TEST(KMeansGreedy, OneDimensionalExample) {
    const PointSet cluster = make_points({{0}, {1}, {2}, {100}});
    const std::vector<Point> cands{vec({1}), vec({50})};
    const auto sel = kmeans::greedy_select(cluster, cands, 0.25);
    EXPECT_EQ(sel.index, 0u);
    EXPECT_EQ(sel.cost, 2.0);
    EXPECT_EQ(trimmed::trimmed_cost(cluster, cands[1], 0.25, 2), 48.0 * 48 + 49.0 * 49 + 50.0 * 50);
}

TEST(KMeansGreedy, SingleCandidateAndAlphaZero) {
    const PointSet cluster = make_points({{0}, {1}, {2}, {100}});
    const std::vector<Point> one{vec({-7})};
    EXPECT_EQ(kmeans::greedy_select(cluster, one, 0.2).index, 0u);
    const std::vector<Point> two{vec({1}), vec({25.75})};
    // At alpha = 0 the full squared cost decides, and the mean 25.75 wins.
    EXPECT_EQ(kmeans::greedy_select(cluster, two, 0.0).index, 1u);
}

TEST(KMeansGreedy, MatchesBruteForce) {
    Rng rng(2);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t d = 1 + rng.uniform_index(3);
        const std::size_t m = 1 + rng.uniform_index(25);
        std::vector<double> v(m * d);
        for (auto& x : v) x = static_cast<double>(rng.uniform_index(5));
        const PointSet cluster(m, d, v);
        std::vector<Point> cands;
        const std::size_t nc = 1 + rng.uniform_index(50);
        for (std::size_t c = 0; c < nc; ++c) {
            Point p(static_cast<Eigen::Index>(d));
            for (auto& x : p) x = static_cast<double>(rng.uniform_index(5));
            cands.push_back(p);
        }
        const double alpha = 0.49 * rng.uniform01();
        const auto [arg, cost] = brute_force_select(cluster, cands, alpha);
        const auto sel = kmeans::greedy_select(cluster, cands, alpha);
        EXPECT_EQ(sel.index, arg);
        EXPECT_EQ(sel.cost, cost);
    }
}

TEST(KMeansRun, SquareCornersAlphaZero) {
    kmeans::Config cfg;
    cfg.alpha = 0.0;
    const PointSet X = make_points({{0, 0}, {2, 0}, {0, 2}, {2, 2}});
    const auto res = kmeans::run(X, Partition({0, 0, 0, 0}, 1), cfg);
    ASSERT_EQ(res.centers.size(), 1u);
    EXPECT_EQ(res.centers[0], vec({1, 1}));
}

TEST(KMeansRun, Deterministic) {
    Rng rng(3);
    const auto blobs = test::gaussian_blobs(3, 60, 3, 8.0, rng);
    kmeans::Config cfg;
    cfg.seed = 5;
    const auto a = kmeans::run(blobs.points, blobs.labels, cfg);
    const auto b = kmeans::run(blobs.points, blobs.labels, cfg);
    for (std::size_t i = 0; i < a.centers.size(); ++i) EXPECT_EQ(a.centers[i], b.centers[i]);
}

TEST(KMeansRun, CenterIsCentroidOfItsNeighborhood) {
    Rng rng(4);
    const auto blobs = test::gaussian_blobs(3, 70, 2, 10.0, rng);
    Rng crng(5);
    const auto [corrupted, report] = predictor::corrupt_labels(blobs.labels, 0.2, crng);
    kmeans::Config cfg;
    cfg.alpha = 0.2;
    // Rebuild the selection by hand and compare with the solver's output.
    const auto res = kmeans::run(blobs.points, corrupted, cfg);
    const auto theory = kmeans::theory_sizes(cfg, 3);
    for (int c = 0; c < 3; ++c) {
        const PointSet cluster = blobs.points.select(corrupted.members(c));
        std::vector<Point> cands;
        for (std::size_t trial = 0; trial < std::min(theory.trials, cfg.caps.max_trials); ++trial) {
            Rng r(derive_seed(cfg.seed, static_cast<std::uint64_t>(c), trial));
            const PointSet R = cluster.select(r.sample_without_replacement(cluster.size(), std::min(theory.r_size, cfg.caps.max_r_size)));
            for (auto& p : kmeans::subset_centroids(R, theory.subset_size, cfg.caps.max_subsets_per_trial, r)) cands.push_back(p);
        }
        const auto sel = kmeans::greedy_select(cluster, cands, cfg.alpha);
        const Point expect = geom::centroid(cluster.select(trimmed::neighborhood(cluster, cands[sel.index], cfg.alpha)));
        const Point& got = res.centers[static_cast<std::size_t>(c)];
        EXPECT_LE((got - expect).norm(), 1e-12 * std::max(1.0, expect.norm()));
    }
}

TEST(KMeansRun, BeatsPredictorCentroids) {
    int wins = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(200 + seed);
        const auto blobs = test::gaussian_blobs(3, 100, 2, 10.0, rng);
        Rng crng(300 + seed);
        const auto [corrupted, report] = predictor::corrupt_labels(blobs.labels, 0.2, crng);
        kmeans::Config cfg;
        cfg.alpha = 0.2;
        cfg.seed = seed;
        const auto res = kmeans::run(blobs.points, corrupted, cfg);
        if (geom::cost_kmeans(blobs.points, res.centers) <= geom::cost_kmeans(blobs.points, centroids_of(blobs.points, corrupted))) {
            ++wins;
        }
    }
    EXPECT_GE(wins, 9);
}

TEST(KMeansRun, WithinGuaranteeBound) {
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(400 + seed);
        const auto blobs = test::gaussian_blobs(3, 100, 3, 12.0, rng);
        Rng crng(500 + seed);
        const double alpha = 0.1 + 0.03 * static_cast<double>(seed % 5);
        const auto [corrupted, report] = predictor::corrupt_labels(blobs.labels, alpha, crng);
        kmeans::Config cfg;
        cfg.alpha = std::min(0.49, report.achieved_alpha);
        cfg.seed = seed;
        const auto res = kmeans::run(blobs.points, corrupted, cfg);
        const double optimum = geom::cost_kmeans(blobs.points, centroids_of(blobs.points, blobs.labels));
        const double ratio = geom::cost_kmeans(blobs.points, res.centers) / optimum;
        if (ratio <= metrics::kmeans_bound(cfg.alpha, cfg.epsilon)) ++ok;
    }
    EXPECT_GE(ok, 9);
}

TEST(KMeansRun, EmptyClusterWarning) {
    kmeans::Config cfg;
    const PointSet X = make_points({{0, 0}, {2, 0}});
    const auto res = kmeans::run(X, Partition({1, 1}, 2), cfg);
    ASSERT_EQ(res.centers.size(), 2u);
    EXPECT_EQ(res.centers[0], vec({1, 0}));
    EXPECT_EQ(res.warnings.size(), 1u);
}

#include "lakm/la_kmeans.hpp"

#include <algorithm>
#include <cmath>

#include "lakm/geom.hpp"
#include "lakm/sampling.hpp"

namespace lakm::kmeans {

void Config::validate() const {
    if (!(alpha >= 0.0 && alpha < 0.5)) throw Error("kmeans: alpha must lie in [0, 0.5)");
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw Error("kmeans: epsilon must lie in (0, 1]");
    if (!(delta > 0.0 && delta < 1.0)) throw Error("kmeans: delta must lie in (0, 1)");
    if (caps.max_trials < 1 || caps.max_r_size < 1 || caps.max_subsets_per_trial < 1) {
        throw Error("kmeans: all caps must be >= 1");
    }
}

TheorySizes theory_sizes(const Config& cfg, std::size_t k) {
    const double keep = (1.0 - cfg.alpha) * cfg.epsilon;
    if (!(keep > 0.0)) throw Error("kmeans: (1 - alpha) * epsilon must be positive");
    if (k < 1) throw Error("kmeans: k must be >= 1");
    TheorySizes s;
    s.r_size = ceil_count(4.0 / keep);
    s.subset_size = std::max<std::size_t>(1, ceil_count(1.0 / keep));
    s.trials = std::max<std::size_t>(1, ceil_count(std::log(cfg.delta / static_cast<double>(k)) / std::log(0.75)));
    return s;
}

std::vector<Point> subset_centroids(const PointSet& r, std::size_t subset_size, std::size_t cap, Rng& rng) {
    if (subset_size < 1 || subset_size > r.size()) throw Error("kmeans: subset size must lie in [1, |R|]");
    std::vector<Point> out;
    for (const auto& subset : choose_subsets(r.size(), subset_size, cap, rng)) {
        out.push_back(geom::centroid(r.select(subset)));
    }
    return out;
}

trimmed::Selection greedy_select(const PointSet& cluster, std::span<const Point> candidates, double alpha) {
    return trimmed::select(cluster, candidates, alpha, 2);
}

SolveResult run(const PointSet& points, const Partition& predicted, const Config& cfg) {
    cfg.validate();
    if (predicted.size() != points.size()) throw Error("kmeans::run: partition size does not match point count");
    const auto k = static_cast<std::size_t>(predicted.k);
    const TheorySizes theory = theory_sizes(cfg, k);
    const std::size_t trials = std::min(theory.trials, cfg.caps.max_trials);
    const std::size_t r_size = std::min(theory.r_size, cfg.caps.max_r_size);

    SolveResult result;
    std::vector<Point> centers;
    for (std::size_t i = 0; i < k; ++i) {
        const auto members = predicted.members(static_cast<int>(i));
        if (members.empty()) {
            centers.push_back(geom::centroid(points));
            result.warnings.push_back("cluster " + std::to_string(i) + " is empty; using the dataset centroid");
            result.candidate_counts.push_back(0);
            continue;
        }
        const PointSet cluster = points.select(members);
        std::vector<Point> candidates;
        for (std::size_t trial = 0; trial < trials; ++trial) {
            Rng rng(derive_seed(cfg.seed, i, trial));
            const auto picked = rng.sample_without_replacement(cluster.size(), r_size);
            const PointSet r = cluster.select(picked);
            const std::size_t s = std::min(theory.subset_size, r.size());
            for (auto& c : subset_centroids(r, s, cfg.caps.max_subsets_per_trial, rng)) {
                candidates.push_back(std::move(c));
            }
        }
        result.candidate_counts.push_back(candidates.size());
        if (candidates.empty()) {
            centers.push_back(geom::centroid(cluster));
            result.warnings.push_back("cluster " + std::to_string(i) + " has no candidates; using its centroid");
            continue;
        }
        const auto chosen = greedy_select(cluster, candidates, cfg.alpha);
        const auto hood = trimmed::neighborhood(cluster, candidates[chosen.index], cfg.alpha);
        centers.push_back(geom::centroid(cluster.select(hood)));
    }
    result.centers = CenterSet(std::move(centers));
    return result;
}

}  // namespace lakm::kmeans

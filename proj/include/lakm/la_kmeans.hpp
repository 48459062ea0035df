#ifndef LAKM_LA_KMEANS_HPP
#define LAKM_LA_KMEANS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lakm/la_kmedian.hpp"

namespace lakm::kmeans {

// The k-means sample sizes are small constants, so these caps usually leave
// the subset enumeration exhaustive.
struct Caps {
    std::size_t max_trials = 8;
    std::size_t max_r_size = 12;
    std::size_t max_subsets_per_trial = 256;
};

struct Config {
    double alpha = 0.2;
    double epsilon = 0.5;
    double delta = 0.1;
    std::uint64_t seed = 0;
    Caps caps;

    void validate() const;
};

struct TheorySizes {
    std::size_t r_size = 0;
    std::size_t subset_size = 0;
    std::size_t trials = 0;
};

/// |R| = ceil(4/((1-a)e)), subsets of ceil(1/((1-a)e)), trials = ceil(ln(delta/k)/ln 0.75).
TheorySizes theory_sizes(const Config& cfg, std::size_t k);

/// Centroids of size-`subset_size` subsets of R: every subset when there are
/// at most `cap`, else `cap` distinct random ones.
std::vector<Point> subset_centroids(const PointSet& r, std::size_t subset_size, std::size_t cap, Rng& rng);

/// Same rule as the k-median selection with squared distances.
trimmed::Selection greedy_select(const PointSet& cluster, std::span<const Point> candidates, double alpha);

SolveResult run(const PointSet& points, const Partition& predicted, const Config& cfg);

}  // namespace lakm::kmeans

#endif  // LAKM_LA_KMEANS_HPP

#ifndef LAKM_PREDICTOR_HPP
#define LAKM_PREDICTOR_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "lakm/rng.hpp"
#include "lakm/types.hpp"

namespace lakm::predictor {

/// D^power sampling: first center uniform, each next one a data point drawn
/// with probability proportional to dist^power to the chosen centers
/// (power 1 is the k-medoids++ rule, power 2 is k-means++).
CenterSet seed_dsampling(const PointSet& points, std::size_t k, int power, Rng& rng);

enum class CenterMode { median, mean };

struct LloydResult {
    CenterSet centers;
    Partition labels;
    std::vector<double> cost_history;  ///< cost after each update
    std::size_t iterations = 0;
};

/// Lloyd iterations: nearest assignment, then per-cluster geometric median
/// (median mode) or centroid (mean mode), until the relative cost improvement
/// drops below tol. Empty clusters take the point farthest from its center.
LloydResult refine_lloyd(const PointSet& points, const CenterSet& init, CenterMode mode, std::size_t max_iter = 100,
                         double tol = 1e-9);

struct CorruptionReport {
    double requested_alpha = 0.0;
    double achieved_alpha = 0.0;
    std::size_t moved = 0;
};

/// Error rate of `predicted` against `truth`:
/// 1 - min_i |P_i & T_i| / max(|P_i|, |T_i|) over clusters with any points.
double achieved_error_rate(const Partition& truth, const Partition& predicted);

/// Moves floor(alpha * |T_i|) uniformly chosen points out of every true
/// cluster. Destinations are uniform over the other k-1 clusters, or over all
/// k when `allow_self` is set.
std::pair<Partition, CorruptionReport> corrupt_labels(const Partition& truth, double alpha, Rng& rng,
                                                      bool allow_self = false);

}  // namespace lakm::predictor

#endif  // LAKM_PREDICTOR_HPP

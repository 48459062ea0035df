#ifndef LAKM_LA_KMEDIAN_HPP
#define LAKM_LA_KMEDIAN_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lakm/rng.hpp"
#include "lakm/subspace.hpp"
#include "lakm/trimmed.hpp"
#include "lakm/types.hpp"

namespace lakm {

/// Centers plus diagnostics from one solver run.
struct SolveResult {
    CenterSet centers;
    std::vector<std::string> warnings;
    std::vector<std::size_t> candidate_counts;
};

}  // namespace lakm

namespace lakm::kmedian {

/// Practical bounds on the sampling and search sizes. The exact sizes that the
/// guarantee needs (see theory_sizes) are far too large to run as-is.
struct Caps {
    std::size_t max_trials = 8;
    std::size_t max_q_size = 26;
    std::size_t max_r_size = 8;
    std::size_t max_subsets_per_trial = 16;
    std::size_t max_grid_points = 512;
    std::size_t max_candidates_per_cluster = 4096;
};

struct Config {
    double alpha = 0.2;  ///< label error rate, [0, 0.5)
    double epsilon = 0.5;
    double delta = 0.1;
    double zeta = 1.0 / 13.0;
    std::uint64_t seed = 0;
    Caps caps;
    /// Optional post-step, off by default: replace the selected center by the
    /// geometric median of its trimmed neighborhood, this many times.
    std::size_t recenter_iterations = 0;

    void validate() const;
};

/// Grid side and sample sizes are undefined at alpha = 0; below this rate the
/// solver sizes grids and samples as if alpha were this value.
inline constexpr double kMinGridAlpha = 0.01;

struct TheorySizes {
    std::size_t q_size = 0;
    std::size_t r_size = 0;
    std::size_t trials = 0;
};

/// Uncapped sizes: |Q| = ceil(2/((1-a)z)), |R| = ceil(4 ln(2/(a e)) / ((1-a)(a e/2)^3)),
/// trials = ceil(ln(delta/k) / ln 0.975). Throws at alpha = 0 (|R| unbounded).
TheorySizes theory_sizes(const Config& cfg, std::size_t k);

struct ScaleLadder {
    double v = 0.0;
    double a = 0.0;
    double b = 0.0;
    std::vector<int> levels;
    std::vector<double> scales;
    bool degenerate = false;
};

/// v = Cost(Q, y) and the powers of two from floor(log2(v z^3/2)) to
/// ceil(log2(v/z)). A zero v yields one level at `degenerate_scale`.
ScaleLadder scale_ladder(const PointSet& q, const PointRef& y, double zeta, double degenerate_scale = 1e-12);

/// Grid side theta = alpha * epsilon * t / (4 |R|).
double grid_side(double t, double alpha, double epsilon, std::size_t r_size);

/// Candidate construction: for each r in R, the lattice of side theta on
/// span(R) anchored at r, clipped to the ball B(r, 2t). At most
/// `max_grid_points` per anchor.
std::vector<Point> csc(const PointSet& r, double t, double alpha, double epsilon, std::size_t max_grid_points,
                       Rng& rng);
std::vector<Point> csc(const PointSet& r, const subspace::AffineBasis& basis, double t, double alpha,
                       double epsilon, std::size_t max_grid_points, Rng& rng);

/// Candidate with the least sum of distances over its ceil((1-alpha)|cluster|)
/// nearest cluster points. Earliest candidate wins ties.
trimmed::Selection greedy_select(const PointSet& cluster, const CandidateSet& candidates, double alpha);
trimmed::Selection greedy_select(const PointSet& cluster, std::span<const Point> candidates, double alpha);

/// All candidates the sampling trials produce for one predicted cluster.
/// `k` enters the trial count; `cluster_index` selects the RNG streams.
CandidateSet collect_candidates(const PointSet& cluster, const Config& cfg, std::size_t k,
                                std::size_t cluster_index);

/// Sample-and-search learning-augmented k-median. One center per predicted
/// cluster; each cluster draws from its own RNG streams, so the result depends
/// only on the inputs and cfg.seed.
SolveResult run(const PointSet& points, const Partition& predicted, const Config& cfg);

}  // namespace lakm::kmedian

#endif  // LAKM_LA_KMEDIAN_HPP

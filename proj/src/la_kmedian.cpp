#include "lakm/la_kmedian.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lakm/geom.hpp"
#include "lakm/sampling.hpp"

namespace lakm::kmedian {

namespace {

struct Draw {
    std::size_t y = 0;
    std::vector<std::size_t> q;
    std::vector<std::size_t> r;
};

// y first, then disjoint Q and R; all sampled without replacement. Small
// clusters shrink Q and R proportionally, never below one point each.
Draw draw_samples(std::size_t m, std::size_t q_size, std::size_t r_size, Rng& rng) {
    const auto perm = rng.sample_without_replacement(m, std::min(m, 1 + q_size + r_size));
    Draw draw;
    draw.y = perm[0];
    const std::size_t avail = perm.size() - 1;
    if (avail == 0) {
        draw.q = {perm[0]};
        draw.r = {perm[0]};
        return draw;
    }
    if (avail == 1) {
        draw.q = {perm[1]};
        draw.r = {perm[1]};
        return draw;
    }
    std::size_t q = q_size;
    std::size_t r = r_size;
    if (avail < q_size + r_size) {
        const double share = static_cast<double>(q_size) / static_cast<double>(q_size + r_size);
        q = std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(share * static_cast<double>(avail))), 1,
                                    avail - 1);
        r = avail - q;
    }
    draw.q.assign(perm.begin() + 1, perm.begin() + 1 + static_cast<std::ptrdiff_t>(q));
    draw.r.assign(perm.begin() + 1 + static_cast<std::ptrdiff_t>(q),
                  perm.begin() + 1 + static_cast<std::ptrdiff_t>(q + r));
    return draw;
}

}  // namespace

void Config::validate() const {
    if (!(alpha >= 0.0 && alpha < 0.5)) throw Error("kmedian: alpha must lie in [0, 0.5)");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error("kmedian: epsilon must lie in (0, 1)");
    if (!(delta > 0.0 && delta < 1.0)) throw Error("kmedian: delta must lie in (0, 1)");
    if (!(zeta > 0.0 && zeta < 1.0 / 12.0)) throw Error("kmedian: zeta must lie in (0, 1/12)");
    if (caps.max_trials < 1 || caps.max_q_size < 1 || caps.max_r_size < 1 || caps.max_subsets_per_trial < 1 ||
        caps.max_grid_points < 1 || caps.max_candidates_per_cluster < 1) {
        throw Error("kmedian: all caps must be >= 1");
    }
}

TheorySizes theory_sizes(const Config& cfg, std::size_t k) {
    if (!(cfg.alpha > 0.0)) throw Error("kmedian: theory sizes unavailable at alpha = 0; caps required");
    if (k < 1) throw Error("kmedian: k must be >= 1");
    const double a = cfg.alpha;
    const double half = a * cfg.epsilon / 2.0;
    TheorySizes s;
    s.q_size = ceil_count(2.0 / ((1.0 - a) * cfg.zeta));
    const double r = 4.0 * std::log(1.0 / half) / ((1.0 - a) * half * half * half);
    s.r_size = r >= 1e18 ? static_cast<std::size_t>(1e18) : ceil_count(r);
    s.trials = std::max<std::size_t>(1, ceil_count(std::log(cfg.delta / static_cast<double>(k)) / std::log(0.975)));
    return s;
}

ScaleLadder scale_ladder(const PointSet& q, const PointRef& y, double zeta, double degenerate_scale) {
    ScaleLadder ladder;
    ladder.v = geom::cost_to_point(q, y, 1);
    ladder.a = ladder.v * zeta * zeta * zeta / 2.0;
    ladder.b = ladder.v / zeta;
    if (ladder.v <= 0.0) {
        ladder.degenerate = true;
        ladder.scales.push_back(degenerate_scale);
        ladder.levels.push_back(static_cast<int>(std::floor(std::log2(degenerate_scale))));
        return ladder;
    }
    const int lo = static_cast<int>(std::floor(std::log2(ladder.a)));
    const int hi = static_cast<int>(std::ceil(std::log2(ladder.b)));
    for (int l = lo; l <= hi; ++l) {
        ladder.levels.push_back(l);
        ladder.scales.push_back(std::ldexp(1.0, l));
    }
    return ladder;
}

double grid_side(double t, double alpha, double epsilon, std::size_t r_size) {
    const double theta = alpha * epsilon * t / (4.0 * static_cast<double>(r_size));
    if (!(t > 0.0) || !(theta > 0.0) || !std::isfinite(theta)) {
        throw Error("csc: invalid scale (grid side undefined)");
    }
    return theta;
}

std::vector<Point> csc(const PointSet& r, const subspace::AffineBasis& basis, double t, double alpha,
                       double epsilon, std::size_t max_grid_points, Rng& rng) {
    const double theta = grid_side(t, alpha, epsilon, r.size());
    std::vector<Point> out;
    for (std::size_t i = 0; i < r.size(); ++i) {
        subspace::GridSpec spec{Point(r.point(i)), basis, theta, 2.0 * t};
        auto grid = subspace::enumerate_grid(spec, max_grid_points, rng);
        for (auto& p : grid.points) out.push_back(std::move(p));
    }
    return out;
}

std::vector<Point> csc(const PointSet& r, double t, double alpha, double epsilon, std::size_t max_grid_points,
                       Rng& rng) {
    return csc(r, subspace::build_affine_basis(r), t, alpha, epsilon, max_grid_points, rng);
}

trimmed::Selection greedy_select(const PointSet& cluster, const CandidateSet& candidates, double alpha) {
    return trimmed::select(cluster, candidates, alpha, 1);
}

trimmed::Selection greedy_select(const PointSet& cluster, std::span<const Point> candidates, double alpha) {
    return trimmed::select(cluster, candidates, alpha, 1);
}

CandidateSet collect_candidates(const PointSet& cluster, const Config& cfg, std::size_t k,
                                std::size_t cluster_index) {
    cfg.validate();
    Config sizing = cfg;
    sizing.alpha = std::max(cfg.alpha, kMinGridAlpha);
    const TheorySizes theory = theory_sizes(sizing, k);
    const std::size_t trials = std::min(theory.trials, cfg.caps.max_trials);
    const std::size_t q_size = std::min(theory.q_size, cfg.caps.max_q_size);
    const std::size_t r_size = std::min(theory.r_size, cfg.caps.max_r_size);
    const std::size_t subset_size = ceil_count(1.0 / cfg.zeta);
    const double floor_scale = std::max(1e-12, 1e-9 * geom::scale(cluster));

    CandidateSet candidates(cluster.dim(), cfg.caps.max_candidates_per_cluster);
    for (std::size_t trial = 0; trial < trials && !candidates.full(); ++trial) {
        Rng rng(derive_seed(cfg.seed, cluster_index, trial));
        const Draw draw = draw_samples(cluster.size(), q_size, r_size, rng);
        const PointSet q = cluster.select(draw.q);
        const PointSet r = cluster.select(draw.r);
        const auto y = cluster.point(draw.y);

        // CSC output depends on t only, so the ladders of all subsets are
        // merged before any grid is built.
        std::set<double> scales;
        const auto subsets =
            choose_subsets(q.size(), std::min(subset_size, q.size()), cfg.caps.max_subsets_per_trial, rng);
        for (const auto& subset : subsets) {
            const auto ladder = scale_ladder(q.select(subset), y, cfg.zeta, floor_scale);
            scales.insert(ladder.scales.begin(), ladder.scales.end());
        }

        // Split the candidate budget evenly over every (scale, anchor) grid of
        // every trial so the cap does not starve later scales.
        const std::size_t grids = trials * scales.size() * r.size();
        const std::size_t per_grid =
            std::clamp<std::size_t>(cfg.caps.max_candidates_per_cluster / std::max<std::size_t>(grids, 1), 1,
                                    cfg.caps.max_grid_points);

        const auto basis = subspace::build_affine_basis(r);
        for (double t : scales) {
            for (const auto& p : csc(r, basis, t, sizing.alpha, cfg.epsilon, per_grid, rng)) {
                candidates.add(p);
                if (candidates.full()) break;
            }
            if (candidates.full()) break;
        }
    }
    return candidates;
}

SolveResult run(const PointSet& points, const Partition& predicted, const Config& cfg) {
    cfg.validate();
    if (predicted.size() != points.size()) throw Error("kmedian::run: partition size does not match point count");
    const auto k = static_cast<std::size_t>(predicted.k);

    SolveResult result;
    std::vector<Point> centers;
    centers.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const auto members = predicted.members(static_cast<int>(i));
        if (members.empty()) {
            centers.push_back(geom::centroid(points));
            result.warnings.push_back("cluster " + std::to_string(i) + " is empty; using the dataset centroid");
            result.candidate_counts.push_back(0);
            continue;
        }
        const PointSet cluster = points.select(members);
        const CandidateSet candidates = collect_candidates(cluster, cfg, k, i);
        result.candidate_counts.push_back(candidates.size());
        if (candidates.empty()) {
            centers.push_back(geom::weiszfeld_median(cluster).point);
            result.warnings.push_back("cluster " + std::to_string(i) + " has no candidates; using its median");
            continue;
        }
        Point center = candidates[greedy_select(cluster, candidates, cfg.alpha).index];
        for (std::size_t it = 0; it < cfg.recenter_iterations; ++it) {
            const auto hood = trimmed::neighborhood(cluster, center, cfg.alpha);
            center = geom::weiszfeld_median(cluster.select(hood)).point;
        }
        centers.push_back(std::move(center));
    }
    result.centers = CenterSet(std::move(centers));
    return result;
}

}  // namespace lakm::kmedian

#include "lakm/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lakm/geom.hpp"

namespace lakm::predictor {

CenterSet seed_dsampling(const PointSet& points, std::size_t k, int power, Rng& rng) {
    const std::size_t n = points.size();
    if (k < 1) throw Error("seed_dsampling: k must be >= 1");
    if (k > n) throw Error("seed_dsampling: k exceeds the number of points");
    if (power != 1 && power != 2) throw Error("seed_dsampling: power must be 1 or 2");

    std::vector<Point> centers;
    std::vector<bool> chosen(n, false);
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());

    std::size_t pick = static_cast<std::size_t>(rng.uniform_index(n));
    while (true) {
        chosen[pick] = true;
        centers.emplace_back(points.point(pick));
        if (centers.size() == k) break;

        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            nearest[i] = std::min(nearest[i], geom::dist(points.point(i), centers.back()));
            total += chosen[i] ? 0.0 : (power == 1 ? nearest[i] : nearest[i] * nearest[i]);
        }
        if (total > 0.0) {
            const double target = rng.uniform01() * total;
            double acc = 0.0;
            pick = n;
            std::size_t last = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (chosen[i]) continue;
                const double w = power == 1 ? nearest[i] : nearest[i] * nearest[i];
                if (w <= 0.0) continue;
                last = i;
                acc += w;
                if (acc > target) {
                    pick = i;
                    break;
                }
            }
            if (pick == n) pick = last;
        } else {
            // Only duplicates of chosen centers remain.
            std::vector<std::size_t> rest;
            for (std::size_t i = 0; i < n; ++i) {
                if (!chosen[i]) rest.push_back(i);
            }
            pick = rest[static_cast<std::size_t>(rng.uniform_index(rest.size()))];
        }
    }
    return CenterSet(std::move(centers));
}

namespace {

double mode_cost(const PointSet& points, const CenterSet& centers, CenterMode mode) {
    return mode == CenterMode::median ? geom::cost_kmedian(points, centers) : geom::cost_kmeans(points, centers);
}

void repair_empty(const PointSet& points, const CenterSet& centers, Partition& labels) {
    auto sizes = labels.cluster_sizes();
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        if (sizes[c] > 0) continue;
        std::size_t far = points.size();
        double far_dist = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto own = static_cast<std::size_t>(labels.labels[i]);
            if (sizes[own] < 2) continue;
            const double d = geom::dist(points.point(i), centers[own]);
            if (d > far_dist) {
                far_dist = d;
                far = i;
            }
        }
        if (far == points.size()) continue;
        --sizes[static_cast<std::size_t>(labels.labels[far])];
        labels.labels[far] = static_cast<int>(c);
        sizes[c] = 1;
    }
}

}  // namespace

LloydResult refine_lloyd(const PointSet& points, const CenterSet& init, CenterMode mode, std::size_t max_iter,
                         double tol) {
    if (init.empty()) throw Error("refine_lloyd: empty initial center set");
    if (init.dim() != points.dim()) throw Error("refine_lloyd: dimension mismatch");

    LloydResult result;
    CenterSet centers = init;
    double prev = mode_cost(points, centers, mode);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        Partition labels = geom::nearest_assign(points, centers);
        repair_empty(points, centers, labels);

        std::vector<Point> next;
        next.reserve(centers.size());
        for (std::size_t c = 0; c < centers.size(); ++c) {
            const auto members = labels.members(static_cast<int>(c));
            if (members.empty()) {
                next.push_back(centers[c]);
                continue;
            }
            const PointSet cluster = points.select(members);
            next.push_back(mode == CenterMode::median ? geom::weiszfeld_median(cluster).point : geom::centroid(cluster));
        }
        centers = CenterSet(std::move(next));
        const double cost = mode_cost(points, centers, mode);
        result.cost_history.push_back(cost);
        result.iterations = iter + 1;
        if (prev - cost < tol * prev) break;
        prev = cost;
    }
    result.labels = geom::nearest_assign(points, centers);
    result.centers = std::move(centers);
    return result;
}

double achieved_error_rate(const Partition& truth, const Partition& predicted) {
    if (truth.size() != predicted.size()) throw Error("achieved_error_rate: length mismatch");
    const int k = std::max(truth.k, predicted.k);
    std::vector<std::size_t> inter(static_cast<std::size_t>(k), 0);
    std::vector<std::size_t> t_size(static_cast<std::size_t>(k), 0);
    std::vector<std::size_t> p_size(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const auto t = static_cast<std::size_t>(truth.labels[i]);
        const auto p = static_cast<std::size_t>(predicted.labels[i]);
        ++t_size[t];
        ++p_size[p];
        if (t == p) ++inter[t];
    }
    double worst = 1.0;
    for (std::size_t c = 0; c < inter.size(); ++c) {
        const std::size_t denom = std::max(t_size[c], p_size[c]);
        if (denom == 0) continue;
        worst = std::min(worst, static_cast<double>(inter[c]) / static_cast<double>(denom));
    }
    return 1.0 - worst;
}

std::pair<Partition, CorruptionReport> corrupt_labels(const Partition& truth, double alpha, Rng& rng,
                                                      bool allow_self) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw Error("corrupt_labels: alpha must lie in [0, 1)");
    if (truth.k == 1 && alpha > 0.0 && !allow_self) {
        throw Error("corrupt_labels: degenerate corruption, k = 1 leaves no other cluster");
    }
    Partition out = truth;
    CorruptionReport report;
    report.requested_alpha = alpha;
    for (int c = 0; c < truth.k; ++c) {
        const auto members = truth.members(c);
        const std::size_t count = floor_count(alpha * static_cast<double>(members.size()));
        if (count == 0) continue;
        for (std::size_t pick : rng.sample_without_replacement(members.size(), count)) {
            int dest;
            if (allow_self) {
                dest = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(truth.k)));
            } else {
                dest = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(truth.k - 1)));
                if (dest >= c) ++dest;
            }
            out.labels[members[pick]] = dest;
            ++report.moved;
        }
    }
    report.achieved_alpha = achieved_error_rate(truth, out);
    return {std::move(out), report};
}

}  // namespace lakm::predictor

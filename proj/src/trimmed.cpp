#include "lakm/trimmed.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <limits>
#include <numeric>
#include <string_view>

#include "lakm/geom.hpp"

namespace lakm {

CandidateSet::CandidateSet(std::size_t dim, std::size_t capacity) : dim_(dim), capacity_(capacity) {
    if (dim_ < 1) throw Error("CandidateSet: dimension must be >= 1");
}

bool CandidateSet::add(const PointRef& p) {
    if (static_cast<std::size_t>(p.size()) != dim_) throw Error("CandidateSet: dimension mismatch");
    if (full()) return false;
    // +0.0 and -0.0 compare equal but hash differently; normalize first.
    std::vector<double> coords(dim_);
    for (std::size_t j = 0; j < dim_; ++j) coords[j] = p[static_cast<Eigen::Index>(j)] + 0.0;
    const std::size_t h = std::hash<std::string_view>{}(
        std::string_view(reinterpret_cast<const char*>(coords.data()), dim_ * sizeof(double)));
    auto [lo, hi] = by_hash_.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
        if (std::equal(coords.begin(), coords.end(), values_.begin() + static_cast<std::ptrdiff_t>(it->second * dim_))) {
            return false;
        }
    }
    values_.insert(values_.end(), coords.begin(), coords.end());
    by_hash_.emplace(h, count_);
    ++count_;
    return true;
}

namespace trimmed {

namespace {

struct Workspace {
    std::vector<double> dist;
    std::vector<double> scratch;
};

double trimmed_cost_into(const PointSet& cluster, const PointRef& c, std::size_t keep, int power, Workspace& ws,
                         std::vector<std::size_t>* chosen) {
    const std::size_t n = cluster.size();
    ws.dist.resize(n);
    for (std::size_t i = 0; i < n; ++i) ws.dist[i] = geom::squared_dist(cluster.point(i), c);
    // The keep nearest under (distance, index) order are everything below the
    // keep-th smallest distance plus the lowest-index points at that distance.
    double threshold = std::numeric_limits<double>::infinity();
    std::size_t at_threshold = 0;
    if (keep < n) {
        ws.scratch = ws.dist;
        std::nth_element(ws.scratch.begin(), ws.scratch.begin() + static_cast<std::ptrdiff_t>(keep - 1),
                         ws.scratch.end());
        threshold = ws.scratch[keep - 1];
        std::size_t below = 0;
        for (double v : ws.dist) below += v < threshold;
        at_threshold = keep - below;
    }
    if (chosen) chosen->clear();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = ws.dist[i];
        if (s > threshold) continue;
        if (s == threshold && keep < n) {
            if (at_threshold == 0) continue;
            --at_threshold;
        }
        total += power == 1 ? std::sqrt(s) : s;
        if (chosen) chosen->push_back(i);
    }
    return total;
}

void check_power(int power) {
    if (power != 1 && power != 2) throw Error("trimmed: power must be 1 or 2");
}

}  // namespace

std::size_t neighborhood_size(std::size_t cluster_size, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw Error("trimmed: alpha must lie in [0, 1)");
    const std::size_t m = ceil_count((1.0 - alpha) * static_cast<double>(cluster_size));
    return std::clamp<std::size_t>(m, 1, cluster_size);
}

std::vector<std::size_t> neighborhood(const PointSet& cluster, const PointRef& c, double alpha) {
    Workspace ws;
    std::vector<std::size_t> out;
    trimmed_cost_into(cluster, c, neighborhood_size(cluster.size(), alpha), 1, ws, &out);
    return out;
}

double trimmed_cost(const PointSet& cluster, const PointRef& c, double alpha, int power) {
    check_power(power);
    Workspace ws;
    return trimmed_cost_into(cluster, c, neighborhood_size(cluster.size(), alpha), power, ws, nullptr);
}

namespace {

template <typename Get>
Selection select_impl(const PointSet& cluster, std::size_t count, Get get, double alpha, int power) {
    check_power(power);
    if (count == 0) throw Error("trimmed::select: no candidates");
    const std::size_t keep = neighborhood_size(cluster.size(), alpha);
    Workspace ws;
    Selection best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < count; ++i) {
        decltype(auto) c = get(i);
        if (static_cast<std::size_t>(c.size()) != cluster.dim()) throw Error("trimmed::select: dimension mismatch");
        const double cost = trimmed_cost_into(cluster, c, keep, power, ws, nullptr);
        if (cost < best.cost) best = {i, cost};
    }
    return best;
}

}  // namespace

Selection select(const PointSet& cluster, const CandidateSet& candidates, double alpha, int power) {
    return select_impl(cluster, candidates.size(), [&](std::size_t i) { return candidates[i]; }, alpha, power);
}

Selection select(const PointSet& cluster, std::span<const Point> candidates, double alpha, int power) {
    return select_impl(
        cluster, candidates.size(), [&](std::size_t i) -> const Point& { return candidates[i]; }, alpha, power);
}

}  // namespace trimmed
}  // namespace lakm

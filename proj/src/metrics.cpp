#include "lakm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace lakm::metrics {

namespace {

std::map<int, std::size_t> dense_ids(std::span<const int> labels) {
    std::map<int, std::size_t> ids;
    for (int v : labels) ids.emplace(v, 0);
    std::size_t next = 0;
    for (auto& [label, id] : ids) id = next++;
    return ids;
}

double choose2(std::size_t x) {
    const auto v = static_cast<double>(x);
    return v * (v - 1.0) / 2.0;
}

double entropy(std::span<const std::size_t> sums, double n) {
    double h = 0.0;
    for (std::size_t c : sums) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        h -= p * std::log(p);
    }
    return h;
}

void check_bound_range(double alpha) {
    if (!(alpha >= 0.0 && alpha < 0.5)) throw Error("bound: alpha must lie in [0, 0.5)");
}

}  // namespace

ContingencyTable contingency(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) throw Error("contingency: length mismatch");
    const auto ia = dense_ids(a);
    const auto ib = dense_ids(b);
    ContingencyTable t;
    t.n = a.size();
    t.counts.assign(ia.size(), std::vector<std::size_t>(ib.size(), 0));
    t.row_sums.assign(ia.size(), 0);
    t.col_sums.assign(ib.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto r = ia.at(a[i]);
        const auto c = ib.at(b[i]);
        ++t.counts[r][c];
        ++t.row_sums[r];
        ++t.col_sums[c];
    }
    return t;
}

double ari(std::span<const int> a, std::span<const int> b) {
    const auto t = contingency(a, b);
    double index = 0.0;
    for (const auto& row : t.counts) {
        for (std::size_t c : row) index += choose2(c);
    }
    double sum_a = 0.0;
    double sum_b = 0.0;
    for (std::size_t r : t.row_sums) sum_a += choose2(r);
    for (std::size_t c : t.col_sums) sum_b += choose2(c);
    // (index - expected) / (max - expected) with expected = sum_a*sum_b/total,
    // multiplied through by total so that integer counts stay exact.
    const double total = choose2(t.n);
    const double num = index * total - sum_a * sum_b;
    const double denom = 0.5 * (sum_a + sum_b) * total - sum_a * sum_b;
    if (denom == 0.0) {
        // Both partitions trivial (one cluster, or all singletons).
        return index == 0.5 * (sum_a + sum_b) ? 1.0 : 0.0;
    }
    return num / denom;
}

double nmi(std::span<const int> a, std::span<const int> b, NmiNorm norm) {
    const auto t = contingency(a, b);
    const auto n = static_cast<double>(t.n);
    if (t.n == 0) return 1.0;
    const double ha = entropy(t.row_sums, n);
    const double hb = entropy(t.col_sums, n);
    if (ha == 0.0 && hb == 0.0) return 1.0;
    if (ha == 0.0 || hb == 0.0) return 0.0;

    double mi = 0.0;
    for (std::size_t r = 0; r < t.counts.size(); ++r) {
        for (std::size_t c = 0; c < t.counts[r].size(); ++c) {
            const std::size_t nij = t.counts[r][c];
            if (nij == 0) continue;
            const double pij = static_cast<double>(nij) / n;
            mi += pij * std::log(static_cast<double>(nij) * n /
                                 (static_cast<double>(t.row_sums[r]) * static_cast<double>(t.col_sums[c])));
        }
    }
    double denom = 0.0;
    switch (norm) {
        case NmiNorm::min: denom = std::min(ha, hb); break;
        case NmiNorm::geometric: denom = std::sqrt(ha * hb); break;
        case NmiNorm::arithmetic: denom = 0.5 * (ha + hb); break;
        case NmiNorm::max: denom = std::max(ha, hb); break;
    }
    return std::clamp(mi / denom, 0.0, 1.0);
}

double kmedian_bound(double alpha, double epsilon) {
    check_bound_range(alpha);
    return 1.0 + (6.0 * alpha - 4.0 * alpha * alpha + epsilon * alpha) / ((1.0 - alpha) * (1.0 - 2.0 * alpha));
}

double kmeans_bound(double alpha, double epsilon) {
    check_bound_range(alpha);
    return 1.0 + alpha / (1.0 - alpha) + (4.0 * alpha + alpha * epsilon) / ((1.0 - 2.0 * alpha) * (1.0 - alpha));
}

Summary summarize(std::span<const double> values) {
    Summary s;
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

}  // namespace lakm::metrics

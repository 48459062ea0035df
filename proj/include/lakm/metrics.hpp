#ifndef LAKM_METRICS_HPP
#define LAKM_METRICS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "lakm/types.hpp"

namespace lakm::metrics {

struct ContingencyTable {
    std::vector<std::vector<std::size_t>> counts;  ///< rows: labels of A, cols: labels of B
    std::vector<std::size_t> row_sums;
    std::vector<std::size_t> col_sums;
    std::size_t n = 0;
};

/// Labels are used as given; ids need not be dense.
ContingencyTable contingency(std::span<const int> a, std::span<const int> b);

/// Adjusted Rand index. When the expected and maximum index coincide (both
/// partitions trivial), returns 1 if the partitions agree and 0 otherwise.
double ari(std::span<const int> a, std::span<const int> b);
inline double ari(const Partition& a, const Partition& b) { return ari(a.labels, b.labels); }

enum class NmiNorm { min, geometric, arithmetic, max };

/// Mutual information over a normalizer of the two entropies. Both entropies
/// zero gives 1; exactly one zero gives 0.
double nmi(std::span<const int> a, std::span<const int> b, NmiNorm norm = NmiNorm::arithmetic);
inline double nmi(const Partition& a, const Partition& b, NmiNorm norm = NmiNorm::arithmetic) {
    return nmi(a.labels, b.labels, norm);
}

/// 1 + (6a - 4a^2 + e a) / ((1 - a)(1 - 2a)), the k-median guarantee.
double kmedian_bound(double alpha, double epsilon);
/// 1 + a/(1 - a) + (4a + a e) / ((1 - 2a)(1 - a)), the k-means guarantee.
double kmeans_bound(double alpha, double epsilon);

struct Summary {
    double mean = 0.0;
    double stddev = 0.0;  ///< sample standard deviation (n - 1); 0 for one value
};

Summary summarize(std::span<const double> values);

}  // namespace lakm::metrics

#endif  // LAKM_METRICS_HPP

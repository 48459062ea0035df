#ifndef LAKM_TRIMMED_HPP
#define LAKM_TRIMMED_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <unordered_map>
#include <vector>

#include "lakm/types.hpp"

namespace lakm {

/// Append-only list of candidate centers with exact-duplicate rejection and a
/// hard size cap. Insertion order is preserved.
class CandidateSet {
public:
    CandidateSet(std::size_t dim, std::size_t capacity);

    /// False if the point is a duplicate or the set is full.
    bool add(const PointRef& p);

    std::size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }
    bool full() const { return count_ >= capacity_; }
    std::size_t dim() const { return dim_; }
    std::size_t capacity() const { return capacity_; }

    Eigen::Map<const Eigen::VectorXd> operator[](std::size_t i) const {
        return Eigen::Map<const Eigen::VectorXd>(values_.data() + i * dim_, static_cast<Eigen::Index>(dim_));
    }

private:
    std::size_t dim_;
    std::size_t capacity_;
    std::size_t count_ = 0;
    std::vector<double> values_;
    std::unordered_multimap<std::size_t, std::size_t> by_hash_;
};

namespace trimmed {

/// ceil((1 - alpha) * cluster_size), at least 1.
std::size_t neighborhood_size(std::size_t cluster_size, double alpha);

/// Indices (ascending) of the neighborhood_size points nearest to c; ties at
/// the boundary go to the lower point index.
std::vector<std::size_t> neighborhood(const PointSet& cluster, const PointRef& c, double alpha);

/// Sum of dist^power over neighborhood(cluster, c, alpha), summed in point
/// index order.
double trimmed_cost(const PointSet& cluster, const PointRef& c, double alpha, int power);

struct Selection {
    std::size_t index = 0;
    double cost = 0.0;
};

/// Candidate with the smallest trimmed cost; the earliest wins ties.
Selection select(const PointSet& cluster, const CandidateSet& candidates, double alpha, int power);
Selection select(const PointSet& cluster, std::span<const Point> candidates, double alpha, int power);

}  // namespace trimmed
}  // namespace lakm

#endif  // LAKM_TRIMMED_HPP

#ifndef LAKM_TYPES_HPP
#define LAKM_TYPES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lakm {

/// Thrown for violated preconditions and malformed inputs.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// ceil() that ignores floating noise just above an integer, so that
/// 1/(1/13) gives 13 and not 14.
inline std::size_t ceil_count(double x) {
    const double slack = 1e-9 * std::max(1.0, std::abs(x));
    const double c = std::ceil(x - slack);
    return c <= 0.0 ? 0 : static_cast<std::size_t>(c);
}

/// floor() counterpart of ceil_count: 0.29 * 100 gives 29.
inline std::size_t floor_count(double x) {
    const double slack = 1e-9 * std::max(1.0, std::abs(x));
    const double f = std::floor(x + slack);
    return f <= 0.0 ? 0 : static_cast<std::size_t>(f);
}

using Point = Eigen::VectorXd;
using PointRef = Eigen::Ref<const Eigen::VectorXd>;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense n x d matrix of points, one point per row. Never empty, always finite.
class PointSet {
public:
    explicit PointSet(RowMatrix data);
    PointSet(std::size_t n, std::size_t d, std::vector<double> values);
    static PointSet from_points(std::span<const Point> points);

    std::size_t size() const { return static_cast<std::size_t>(data_.rows()); }
    std::size_t dim() const { return static_cast<std::size_t>(data_.cols()); }

    Eigen::Map<const Eigen::VectorXd> point(std::size_t i) const {
        return Eigen::Map<const Eigen::VectorXd>(data_.data() + i * dim(),
                                                 static_cast<Eigen::Index>(dim()));
    }

    /// Rows at the given indices, in the given order.
    PointSet select(std::span<const std::size_t> indices) const;

    const RowMatrix& matrix() const { return data_; }

private:
    RowMatrix data_;
};

/// k >= 1 finite centers of a common dimension.
class CenterSet {
public:
    CenterSet() = default;
    explicit CenterSet(std::vector<Point> centers);

    std::size_t size() const { return centers_.size(); }
    bool empty() const { return centers_.empty(); }
    std::size_t dim() const { return centers_.empty() ? 0 : centers_.front().size(); }
    const Point& operator[](std::size_t i) const { return centers_[i]; }
    const std::vector<Point>& points() const { return centers_; }

private:
    std::vector<Point> centers_;
};

/// Cluster id per point, ids in [0, k).
struct Partition {
    std::vector<int> labels;
    int k = 0;

    Partition() = default;
    Partition(std::vector<int> labels, int k);

    std::size_t size() const { return labels.size(); }
    /// Point indices carrying label `cluster`, ascending.
    std::vector<std::size_t> members(int cluster) const;
    std::vector<std::size_t> cluster_sizes() const;
};

}  // namespace lakm

#endif  // LAKM_TYPES_HPP

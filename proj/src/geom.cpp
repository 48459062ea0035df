#include "lakm/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lakm {

namespace {

void require_finite(const RowMatrix& m, const char* what) {
    if (!m.allFinite()) {
        throw Error(std::string(what) + ": non-finite coordinate");
    }
}

}  // namespace

PointSet::PointSet(RowMatrix data) : data_(std::move(data)) {
    if (data_.rows() < 1 || data_.cols() < 1) {
        throw Error("PointSet: need at least one point of dimension >= 1");
    }
    require_finite(data_, "PointSet");
}

PointSet::PointSet(std::size_t n, std::size_t d, std::vector<double> values) {
    if (values.size() != n * d) {
        throw Error("PointSet: value count does not match n*d");
    }
    RowMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    std::copy(values.begin(), values.end(), m.data());
    *this = PointSet(std::move(m));
}

PointSet PointSet::from_points(std::span<const Point> points) {
    if (points.empty()) throw Error("PointSet: empty point list");
    const auto d = points.front().size();
    RowMatrix m(static_cast<Eigen::Index>(points.size()), d);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != d) throw Error("PointSet: mixed dimensions");
        m.row(static_cast<Eigen::Index>(i)) = points[i].transpose();
    }
    return PointSet(std::move(m));
}

PointSet PointSet::select(std::span<const std::size_t> indices) const {
    if (indices.empty()) throw Error("PointSet::select: empty selection");
    RowMatrix m(static_cast<Eigen::Index>(indices.size()), data_.cols());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= size()) throw Error("PointSet::select: index out of range");
        m.row(static_cast<Eigen::Index>(i)) = data_.row(static_cast<Eigen::Index>(indices[i]));
    }
    return PointSet(std::move(m));
}

CenterSet::CenterSet(std::vector<Point> centers) : centers_(std::move(centers)) {
    if (centers_.empty()) throw Error("CenterSet: empty center set");
    const auto d = centers_.front().size();
    if (d < 1) throw Error("CenterSet: zero-dimensional center");
    for (const auto& c : centers_) {
        if (c.size() != d) throw Error("CenterSet: mixed dimensions");
        if (!c.allFinite()) throw Error("CenterSet: non-finite coordinate");
    }
}

Partition::Partition(std::vector<int> l, int num_clusters) : labels(std::move(l)), k(num_clusters) {
    if (k < 1) throw Error("Partition: k must be >= 1");
    for (int v : labels) {
        if (v < 0 || v >= k) throw Error("Partition: label out of range");
    }
}

std::vector<std::size_t> Partition::members(int cluster) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == cluster) out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> Partition::cluster_sizes() const {
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
    for (int v : labels) ++sizes[static_cast<std::size_t>(v)];
    return sizes;
}

namespace geom {

namespace {

void check_dims(const PointSet& points, const CenterSet& centers) {
    if (centers.empty()) throw Error("empty center set");
    if (centers.dim() != points.dim()) throw Error("dimension mismatch between points and centers");
}

template <int Power>
double nearest_cost(const PointSet& points, const CenterSet& centers) {
    check_dims(points, centers);
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto p = points.point(i);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& c : centers.points()) {
            best = std::min(best, squared_dist(p, c));
        }
        total += Power == 1 ? std::sqrt(best) : best;
    }
    return total;
}

}  // namespace

double squared_dist(const PointRef& p, const PointRef& q) {
    if (p.size() != q.size()) throw Error("dist: dimension mismatch");
    // Four interleaved partial sums, combined in a fixed order.
    const Eigen::Index d = p.size();
    const double* a = p.data();
    const double* b = q.data();
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    Eigen::Index j = 0;
    for (; j + 4 <= d; j += 4) {
        const double d0 = a[j] - b[j];
        const double d1 = a[j + 1] - b[j + 1];
        const double d2 = a[j + 2] - b[j + 2];
        const double d3 = a[j + 3] - b[j + 3];
        s0 += d0 * d0;
        s1 += d1 * d1;
        s2 += d2 * d2;
        s3 += d3 * d3;
    }
    for (; j < d; ++j) {
        const double diff = a[j] - b[j];
        s0 += diff * diff;
    }
    return (s0 + s1) + (s2 + s3);
}

double dist(const PointRef& p, const PointRef& q) { return std::sqrt(squared_dist(p, q)); }

double cost_kmedian(const PointSet& points, const CenterSet& centers) {
    return nearest_cost<1>(points, centers);
}

double cost_kmeans(const PointSet& points, const CenterSet& centers) {
    return nearest_cost<2>(points, centers);
}

double cost_to_point(const PointSet& points, const PointRef& center, int power) {
    if (center.size() != static_cast<Eigen::Index>(points.dim())) throw Error("dimension mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double s = squared_dist(points.point(i), center);
        total += power == 1 ? std::sqrt(s) : s;
    }
    return total;
}

Point centroid(const PointSet& points) {
    Point sum = Point::Zero(static_cast<Eigen::Index>(points.dim()));
    for (std::size_t i = 0; i < points.size(); ++i) sum += points.point(i);
    return sum / static_cast<double>(points.size());
}

double scale(const PointSet& points) {
    const auto& m = points.matrix();
    return (m.colwise().maxCoeff() - m.colwise().minCoeff()).maxCoeff();
}

MedianResult weiszfeld_median(const PointSet& points, double tol, std::size_t max_iter) {
    if (!(tol > 0.0)) throw Error("weiszfeld_median: tol must be positive");
    const std::size_t n = points.size();
    const double s = scale(points);

    MedianResult result;
    if (s == 0.0) {
        result.point = points.point(0);
        result.converged = true;
        return result;
    }

    const double anchor_radius = 1e-12 * s;
    Point z = centroid(points);
    Point best = z;
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<double> d(n);

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        result.iterations = iter + 1;
        double cost = 0.0;
        std::size_t anchor = n;
        double anchor_weight = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d[i] = dist(points.point(i), z);
            cost += d[i];
            if (d[i] < anchor_radius) {
                if (anchor == n) anchor = i;
                anchor_weight += 1.0;
            }
        }
        if (cost < best_cost) {
            best_cost = cost;
            best = z;
        }

        if (anchor != n) {
            // Subgradient test at a data point: optimal iff the pull of the
            // remaining points does not exceed the anchor's multiplicity.
            Point pull = Point::Zero(z.size());
            for (std::size_t i = 0; i < n; ++i) {
                if (d[i] >= anchor_radius) pull += (points.point(i) - z) / d[i];
            }
            const double norm = pull.norm();
            if (norm <= anchor_weight) {
                best = points.point(anchor);
                result.converged = true;
                break;
            }
            z += (1e-9 * s / norm) * pull;
            continue;
        }

        Point num = Point::Zero(z.size());
        double den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = 1.0 / d[i];
            num += w * points.point(i);
            den += w;
        }
        const Point next = num / den;
        const double step = (next - z).norm();
        z = next;
        if (step < tol * s) {
            result.converged = true;
            const double c = cost_to_point(points, z, 1);
            if (c < best_cost) {
                best_cost = c;
                best = z;
            }
            break;
        }
    }

    result.point = best;
    result.cost = cost_to_point(points, best, 1);
    return result;
}

Partition nearest_assign(const PointSet& points, const CenterSet& centers) {
    check_dims(points, centers);
    std::vector<int> labels(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto p = points.point(i);
        double best = std::numeric_limits<double>::infinity();
        int arg = 0;
        for (std::size_t c = 0; c < centers.size(); ++c) {
            const double s = squared_dist(p, centers[c]);
            if (s < best) {
                best = s;
                arg = static_cast<int>(c);
            }
        }
        labels[i] = arg;
    }
    return Partition(std::move(labels), static_cast<int>(centers.size()));
}

}  // namespace geom
}  // namespace lakm

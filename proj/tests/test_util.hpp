#ifndef LAKM_TEST_UTIL_HPP
#define LAKM_TEST_UTIL_HPP

#include <cstddef>
#include <vector>

#include "lakm/rng.hpp"
#include "lakm/types.hpp"

namespace lakm::test {

inline PointSet make_points(std::initializer_list<std::initializer_list<double>> rows) {
    std::vector<double> values;
    std::size_t d = 0;
    for (const auto& r : rows) {
        d = r.size();
        values.insert(values.end(), r.begin(), r.end());
    }
    return PointSet(rows.size(), d, std::move(values));
}

inline Point vec(std::initializer_list<double> v) {
    Point p(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) p[i++] = x;
    return p;
}

inline Point random_point(std::size_t d, double spread, Rng& rng) {
    Point p(static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j) p[static_cast<Eigen::Index>(j)] = spread * rng.normal();
    return p;
}

inline PointSet random_points(std::size_t n, std::size_t d, double spread, Rng& rng) {
    std::vector<double> v(n * d);
    for (auto& x : v) x = spread * rng.normal();
    return PointSet(n, d, std::move(v));
}

struct Blobs {
    PointSet points;
    Partition labels;
};

/// Isotropic unit-variance Gaussians around centers spaced `gap` apart on the
/// first axis; cluster i gets `per_cluster` points, stored contiguously.
inline Blobs gaussian_blobs(std::size_t k, std::size_t per_cluster, std::size_t d, double gap, Rng& rng) {
    std::vector<double> v;
    std::vector<int> labels;
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t i = 0; i < per_cluster; ++i) {
            for (std::size_t j = 0; j < d; ++j) v.push_back(rng.normal() + (j == 0 ? gap * static_cast<double>(c) : 0.0));
            labels.push_back(static_cast<int>(c));
        }
    }
    return {PointSet(k * per_cluster, d, std::move(v)), Partition(std::move(labels), static_cast<int>(k))};
}

}  // namespace lakm::test

#endif  // LAKM_TEST_UTIL_HPP

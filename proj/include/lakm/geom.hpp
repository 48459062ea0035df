#ifndef LAKM_GEOM_HPP
#define LAKM_GEOM_HPP

#include <cstddef>

#include "lakm/types.hpp"

namespace lakm::geom {

/// Euclidean distance. The summation order is fixed, so every caller that
/// goes through here sees bitwise-identical values.
double dist(const PointRef& p, const PointRef& q);
double squared_dist(const PointRef& p, const PointRef& q);

/// Sum over points of the distance to the nearest center.
double cost_kmedian(const PointSet& points, const CenterSet& centers);
/// Sum over points of the squared distance to the nearest center.
double cost_kmeans(const PointSet& points, const CenterSet& centers);

/// Cost of a single center, power 1 or 2.
double cost_to_point(const PointSet& points, const PointRef& center, int power);

Point centroid(const PointSet& points);

/// Largest coordinate range over all axes; the reference length for relative
/// tolerances.
double scale(const PointSet& points);

struct MedianResult {
    Point point;
    double cost = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Weiszfeld iteration for the geometric median, started from the centroid.
/// `tol` is relative to scale(points): the loop stops once a step is shorter
/// than tol * scale. When an iterate lands on a data point the subgradient
/// condition decides between stopping there and stepping off it.
MedianResult weiszfeld_median(const PointSet& points, double tol = 1e-10,
                              std::size_t max_iter = 2000);

/// Index of the nearest center per point; ties go to the lower index.
Partition nearest_assign(const PointSet& points, const CenterSet& centers);

}  // namespace lakm::geom

#endif  // LAKM_GEOM_HPP

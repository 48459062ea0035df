#ifndef LAKM_SUBSPACE_HPP
#define LAKM_SUBSPACE_HPP

#include <cstddef>
#include <vector>

#include "lakm/rng.hpp"
#include "lakm/types.hpp"

namespace lakm::subspace {

/// Affine flat: origin + span of orthonormal columns of `directions` (d x m).
struct AffineBasis {
    Point origin;
    Eigen::MatrixXd directions;

    std::size_t ambient_dim() const { return static_cast<std::size_t>(origin.size()); }
    std::size_t dim() const { return static_cast<std::size_t>(directions.cols()); }
};

/// Origin is the first sample; directions come from Gram-Schmidt with a second
/// re-orthogonalization pass over r_i - r_0. Residuals shorter than
/// rank_tol * scale(samples) are dropped, so duplicate samples never inflate m.
AffineBasis build_affine_basis(const PointSet& samples, double rank_tol = 1e-9);

/// Orthogonal projection onto the flat.
Point project(const PointRef& p, const AffineBasis& basis);

/// Lattice {center + sum_j z_j * side * dir_j} clipped to the ball of `radius`
/// around center. `center` must lie on the flat.
struct GridSpec {
    Point center;
    AffineBasis basis;
    double side = 0.0;
    double radius = 0.0;
};

struct GridPoints {
    std::vector<Point> points;
    bool truncated = false;
};

/// Number of integer vectors z in Z^m with |z| * side <= radius, counting
/// stops once it passes `limit`.
std::size_t count_lattice_points(std::size_t m, double side, double radius, std::size_t limit);

/// All lattice points of the spec, in lexicographic order of z. If there are
/// more than max_points the result holds exactly max_points distinct lattice
/// points instead: the center plus uniform draws (box rejection for small m,
/// ball sampling with rounding when the box is mostly empty), flagged
/// truncated.
GridPoints enumerate_grid(const GridSpec& spec, std::size_t max_points, Rng& rng);

}  // namespace lakm::subspace

#endif  // LAKM_SUBSPACE_HPP

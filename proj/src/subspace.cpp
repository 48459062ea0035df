#include "lakm/subspace.hpp"

#include <cmath>
#include <functional>
#include <set>

#include "lakm/geom.hpp"

namespace lakm::subspace {

namespace {

// Ball test in lattice units; the slack absorbs rounding in (radius/side)^2.
double lattice_radius2(double side, double radius) {
    const double rho = radius / side;
    return rho * rho * (1.0 + 1e-12);
}

long long coordinate_bound(double rem2) {
    if (rem2 < 0.0) return -1;
    auto b = static_cast<long long>(std::floor(std::sqrt(rem2)));
    while (static_cast<double>((b + 1) * (b + 1)) <= rem2) ++b;
    while (b > 0 && static_cast<double>(b * b) > rem2) --b;
    return b;
}

// Visits z in lexicographic order while the visitor returns true.
void visit_lattice(std::size_t m, double rho2, const std::function<bool(const std::vector<long long>&)>& visit) {
    std::vector<long long> z(m, 0);
    bool keep_going = true;
    std::function<void(std::size_t, double)> rec = [&](std::size_t level, double rem2) {
        if (!keep_going) return;
        if (level == m) {
            keep_going = visit(z);
            return;
        }
        const long long b = coordinate_bound(rem2);
        for (long long v = -b; v <= b && keep_going; ++v) {
            z[level] = v;
            rec(level + 1, rem2 - static_cast<double>(v * v));
        }
        z[level] = 0;
    };
    rec(0, rho2);
}

Point lattice_point(const GridSpec& spec, const std::vector<long long>& z) {
    Eigen::VectorXd coeffs(static_cast<Eigen::Index>(z.size()));
    for (std::size_t j = 0; j < z.size(); ++j) {
        coeffs[static_cast<Eigen::Index>(j)] = static_cast<double>(z[j]) * spec.side;
    }
    return spec.center + spec.basis.directions * coeffs;
}

}  // namespace

AffineBasis build_affine_basis(const PointSet& samples, double rank_tol) {
    const auto d = static_cast<Eigen::Index>(samples.dim());
    AffineBasis basis;
    basis.origin = samples.point(0);
    basis.directions.resize(d, 0);

    const double threshold = rank_tol * geom::scale(samples);
    std::vector<Point> dirs;
    for (std::size_t i = 1; i < samples.size() && static_cast<Eigen::Index>(dirs.size()) < d; ++i) {
        Point v = samples.point(i) - basis.origin;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : dirs) v -= q.dot(v) * q;
        }
        const double norm = v.norm();
        if (norm > threshold && norm > 0.0) dirs.push_back(v / norm);
    }

    basis.directions.resize(d, static_cast<Eigen::Index>(dirs.size()));
    for (std::size_t j = 0; j < dirs.size(); ++j) basis.directions.col(static_cast<Eigen::Index>(j)) = dirs[j];
    return basis;
}

Point project(const PointRef& p, const AffineBasis& basis) {
    if (p.size() != basis.origin.size()) throw Error("project: dimension mismatch");
    if (basis.dim() == 0) return basis.origin;
    const Eigen::VectorXd offset = p - basis.origin;
    return basis.origin + basis.directions * (basis.directions.transpose() * offset);
}

std::size_t count_lattice_points(std::size_t m, double side, double radius, std::size_t limit) {
    if (m == 0) return 1;
    std::size_t count = 0;
    visit_lattice(m, lattice_radius2(side, radius), [&](const std::vector<long long>&) {
        ++count;
        return count <= limit;
    });
    return count;
}

GridPoints enumerate_grid(const GridSpec& spec, std::size_t max_points, Rng& rng) {
    if (!spec.center.allFinite() || !spec.basis.origin.allFinite() || !spec.basis.directions.allFinite() ||
        !std::isfinite(spec.side) || !std::isfinite(spec.radius)) {
        throw Error("enumerate_grid: non-finite grid spec");
    }
    if (!(spec.side > 0.0) || !(spec.radius > 0.0)) throw Error("enumerate_grid: side and radius must be positive");
    if (max_points < 1) throw Error("enumerate_grid: max_points must be >= 1");
    if (spec.center.size() != spec.basis.origin.size()) throw Error("enumerate_grid: dimension mismatch");

    const std::size_t m = spec.basis.dim();
    GridPoints out;
    if (m == 0) {
        out.points.push_back(spec.center);
        return out;
    }

    const double rho2 = lattice_radius2(spec.side, spec.radius);
    const std::size_t total = count_lattice_points(m, spec.side, spec.radius, max_points);
    if (total <= max_points) {
        out.points.reserve(total);
        visit_lattice(m, rho2, [&](const std::vector<long long>& z) {
            out.points.push_back(lattice_point(spec, z));
            return true;
        });
        return out;
    }

    out.truncated = true;
    const long long bound = coordinate_bound(rho2);
    const double md = static_cast<double>(m);
    const double rho = std::sqrt(rho2);
    const double log_ball = 0.5 * md * std::log(M_PI) + md * std::log(rho) - std::lgamma(0.5 * md + 1.0);
    const double log_box = md * std::log(2.0 * static_cast<double>(bound) + 1.0);
    const bool use_box = log_ball - log_box >= std::log(0.01);

    std::set<std::vector<long long>> seen;
    std::vector<long long> z(m, 0);
    seen.insert(z);
    out.points.push_back(spec.center);

    std::vector<double> g(m);
    const std::size_t max_attempts = 4096 * max_points + 100000;
    for (std::size_t attempt = 0; out.points.size() < max_points && attempt < max_attempts; ++attempt) {
        if (use_box) {
            const auto width = static_cast<std::uint64_t>(2 * bound + 1);
            for (auto& v : z) v = static_cast<long long>(rng.uniform_index(width)) - bound;
        } else {
            double norm2 = 0.0;
            for (auto& x : g) {
                x = rng.normal();
                norm2 += x * x;
            }
            if (norm2 == 0.0) continue;
            const double r = rho * std::pow(rng.uniform01(), 1.0 / md) / std::sqrt(norm2);
            for (std::size_t j = 0; j < m; ++j) z[j] = std::llround(r * g[j]);
        }
        double n2 = 0.0;
        for (auto v : z) n2 += static_cast<double>(v * v);
        if (n2 > rho2) continue;
        if (!seen.insert(z).second) continue;
        out.points.push_back(lattice_point(spec, z));
    }
    return out;
}

}  // namespace lakm::subspace

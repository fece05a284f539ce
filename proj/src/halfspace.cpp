#include "tentspace/halfspace.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tentspace {

RegionMask cone_mask(const Space& space, const TimeGrid& grid, int vertex,
                     double alpha, std::optional<double> height) {
    if (!(alpha > 0.0)) throw std::invalid_argument("cone_mask: aperture must be positive");
    if (vertex < 0 || vertex >= space.size())
        throw std::invalid_argument("cone_mask: vertex index out of range");
    if (height && !(*height > 0.0))
        throw std::invalid_argument("cone_mask: truncation height must be positive");
    RegionMask mask(grid.slabs(), space.size());
    for (int j = 0; j < grid.slabs(); ++j) {
        const double t = grid.tau(j);
        if (height && !(t < *height)) continue;
        const double reach = alpha * t;
        for (int i = 0; i < space.size(); ++i)
            if (space.dist(vertex, i) < reach) mask.set(j, i);
    }
    return mask;
}

RegionMask tent_mask(const Space& space, const TimeGrid& grid, const PointSet& over,
                     double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("tent_mask: aperture must be positive");
    if (over.size() != space.size())
        throw std::invalid_argument("tent_mask: point set size mismatch");
    const PointSet outside = over.complement();
    RegionMask mask(grid.slabs(), space.size());
    for (int i = 0; i < space.size(); ++i) {
        const double d = space.dist_to_set(i, outside);
        for (int j = 0; j < grid.slabs(); ++j)
            if (d > alpha * grid.tau(j)) mask.set(j, i);
    }
    return mask;
}

PointSet shadow(const Space& space, const TimeGrid& grid, const RegionMask& region,
                double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("shadow: aperture must be positive");
    if (region.slabs() != grid.slabs() || region.points() != space.size())
        throw std::invalid_argument("shadow: region dimension mismatch");
    PointSet out(space.size());
    for (int x = 0; x < space.size(); ++x) {
        bool hit = false;
        for (int j = 0; j < grid.slabs() && !hit; ++j) {
            const double reach = alpha * grid.tau(j);
            for (int i = 0; i < space.size(); ++i)
                if (region.test(j, i) && space.dist(x, i) < reach) {
                    hit = true;
                    break;
                }
        }
        if (hit) out.add(x);
    }
    return out;
}

RegionMask minimal_tent(const Space& space, const TimeGrid& grid,
                        const RegionMask& region, double alpha) {
    return tent_mask(space, grid, shadow(space, grid, region, alpha), alpha);
}

DensitySets gamma_density_set(const Space& space, const PointSet& o, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("gamma_density_set: gamma must lie in (0,1)");
    if (o.size() != space.size())
        throw std::invalid_argument("gamma_density_set: point set size mismatch");
    const PointSet f = o.complement();
    const auto balls = enumerate_distinct_balls(space);
    DensitySets out{PointSet(space.size()), PointSet(space.size())};
    for (int x = 0; x < space.size(); ++x) out.f_star.add(x);
    for (const Ball& b : balls) {
        double mass = 0.0, f_mass = 0.0;
        for (int i = 0; i < space.size(); ++i)
            if (space.dist(b.center, i) < b.radius) {
                mass += space.weight(i);
                if (f.contains(i)) f_mass += space.weight(i);
            }
        if (f_mass / mass >= gamma) continue;
        // every member of this ball fails the density requirement
        for (int i = 0; i < space.size(); ++i)
            if (space.dist(b.center, i) < b.radius) out.f_star.remove(i);
    }
    out.o_star = out.f_star.complement();
    return out;
}

BetaConstants beta_constants(const Space& space, const TimeGrid& grid,
                             const RegionMask& k_region, double alpha) {
    if (!k_region.any()) throw std::invalid_argument("beta_constants: region is empty");
    BetaConstants out;
    out.beta0 = std::numeric_limits<double>::infinity();
    double best1 = std::numeric_limits<double>::infinity();
    for (const Ball& b : enumerate_distinct_balls(space)) {
        const RegionMask tent = tent_mask(space, grid, space.ball_set(b.center, b.radius), alpha);
        bool meets = false;
        bool covers = true;
        for (int j = 0; j < grid.slabs() && !(meets && !covers); ++j)
            for (int i = 0; i < space.size(); ++i) {
                if (k_region.test(j, i)) {
                    if (tent.test(j, i)) meets = true;
                    else covers = false;
                }
            }
        if (!meets) continue;
        const double mass = space.volume(b.center, b.radius);
        out.beta0 = std::min(out.beta0, mass);
        if (covers) best1 = std::min(best1, mass);
    }
    if (std::isfinite(best1)) out.beta1 = best1;
    // beta0 is always attained: the whole-space ball has the full grid as its
    // tent, which meets any nonempty region.
    return out;
}

} // namespace tentspace

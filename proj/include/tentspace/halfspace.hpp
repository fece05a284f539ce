#pragma once

#include <optional>

#include "tentspace/grid.hpp"
#include "tentspace/space.hpp"

namespace tentspace {

/// Cone of aperture alpha with vertex x, optionally truncated below height h:
/// cell (j,i) is set iff d(x, y_i) < alpha*tau_j and (no h, or tau_j < h).
RegionMask cone_mask(const Space& space, const TimeGrid& grid, int vertex,
                     double alpha, std::optional<double> height = std::nullopt);

/// Tent of aperture alpha over a point set O: cell (j,i) is set iff
/// dist(y_i, O^c) > alpha*tau_j, with dist(., empty) = +infinity so the tent
/// over the whole space is the whole grid.
RegionMask tent_mask(const Space& space, const TimeGrid& grid, const PointSet& over,
                     double alpha);

/// Points whose cone meets the region.
PointSet shadow(const Space& space, const TimeGrid& grid, const RegionMask& region,
                double alpha);

/// Tent over the shadow: contains the region and sits inside every tent that
/// does.
RegionMask minimal_tent(const Space& space, const TimeGrid& grid,
                        const RegionMask& region, double alpha);

struct DensitySets {
    PointSet f_star; // points of global gamma-density with respect to O^c
    PointSet o_star; // complement
};

/// Global gamma-density split for F = O^c, computed directly over all
/// distinct balls containing each point (not centred balls).
DensitySets gamma_density_set(const Space& space, const PointSet& o, double gamma);

struct BetaConstants {
    double beta0 = 0.0;          // min ball mass whose tent meets K
    std::optional<double> beta1; // min ball mass whose tent covers K; empty if none
};

/// Extremal ball masses against the tents meeting/covering a nonempty region.
BetaConstants beta_constants(const Space& space, const TimeGrid& grid,
                             const RegionMask& k_region, double alpha);

} // namespace tentspace

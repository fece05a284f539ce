#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tentspace/grid.hpp"
#include "tentspace/space.hpp"

namespace tentspace {

/// Kernel choice for the Lusin operator: the volume in the denominator is
/// V(a, b*t) with a the cone vertex or the integration point, and b either 1
/// or the aperture. The standard choice (integration point, aperture) is the
/// one every exact identity in this library is pinned to.
struct AVariant {
    enum class Center { vertex, integration_point };
    enum class Scale { unit, aperture };

    Center center = Center::integration_point;
    Scale scale = Scale::aperture;

    bool operator==(const AVariant&) const = default;
};

/// Uncentred maximal averages: sup over all distinct balls containing each
/// point of the ball average of |phi|.
std::vector<double> maximal(const Space& space, std::span<const double> phi);

/// Ball averaging at a single scale s: (1/V(y,s)) * sum over B(y,s).
std::vector<double> ball_average(const Space& space, std::span<const double> phi,
                                 double s);

/// Lusin operator A_q^alpha, optionally truncated to slabs below `height`.
std::vector<double> lusin_a(const Space& space, const TimeGrid& grid,
                            const HalfSpaceFunction& f, double q, double alpha,
                            AVariant variant = {},
                            std::optional<double> height = std::nullopt);

/// Carleson operator C_q^alpha: sup over balls containing x of the normalized
/// integral of |f|^q over the ball's tent.
std::vector<double> carleson_c(const Space& space, const TimeGrid& grid,
                               const HalfSpaceFunction& f, double q, double alpha);

/// Weighted L^p norm on the point set; p = infinity gives the max.
double lp_norm(const Space& space, std::span<const double> values, double p);

/// Tent-space (quasi-)norm: L^p norm of A_q^alpha for finite p, and the max
/// of C_q^alpha when p is infinite.
double tent_norm(const Space& space, const TimeGrid& grid, const HalfSpaceFunction& f,
                 double p, double q, double alpha, AVariant variant = {});

/// Duality pairing: integral of f*g over the full grid against d(mu) dt/t.
double pairing(const Space& space, const TimeGrid& grid, const HalfSpaceFunction& f,
               const HalfSpaceFunction& g);

/// Stopping height per point: the largest grid boundary h with
/// A_q^alpha(g|h)(x) <= M * C_q^alpha(g)(x), or +infinity when the bound
/// holds at full height. The truncated Lusin value is nondecreasing in h, so
/// a single cumulative scan over slabs suffices.
std::vector<double> stopping_height(const Space& space, const TimeGrid& grid,
                                    const HalfSpaceFunction& g, double q,
                                    double big_m, double alpha);

} // namespace tentspace

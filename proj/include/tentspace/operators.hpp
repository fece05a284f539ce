#pragma once

#include <cstdint>
#include <string>

#include "tentspace/functionals.hpp"
#include "tentspace/grid.hpp"
#include "tentspace/space.hpp"

namespace tentspace {

/// Family of half-space functions indexed by a vertex point: the carrier of
/// the embedding T_alpha and its projections. Stored densely; fine at desk
/// scale (n <= 256).
class ConeFamily {
public:
    ConeFamily() = default;
    ConeFamily(int points, int slabs);

    int points() const { return points_; }
    int slabs() const { return slabs_; }

    double at(int x, int j, int i) const { return values_[index(x, j, i)]; }
    double& at(int x, int j, int i) { return values_[index(x, j, i)]; }

    double max_abs() const;

private:
    std::size_t index(int x, int j, int i) const {
        return (static_cast<std::size_t>(x) * static_cast<std::size_t>(slabs_) +
                static_cast<std::size_t>(j)) *
                   static_cast<std::size_t>(points_) +
               static_cast<std::size_t>(i);
    }
    int points_ = 0;
    int slabs_ = 0;
    std::vector<double> values_;
};

/// Denominator used by the averaging projection: V(y, alpha*t) for the
/// pairing that makes T_alpha an isometry, V(y, t) for the change-of-aperture
/// calculus.
enum class VolumeScale { aperture, unit };

/// T_alpha: restrict f to the cone of each vertex.
ConeFamily embed(const Space& space, const TimeGrid& grid, const HalfSpaceFunction& f,
                 double alpha);

/// Pi_alpha: average the family over the ball B(y, alpha*t), normalized by
/// V(y, s*t) with s given by `scale`. With the aperture scale this is a left
/// inverse of embed.
HalfSpaceFunction project(const Space& space, const TimeGrid& grid,
                          const ConeFamily& family, double alpha, VolumeScale scale);

/// P_alpha = embed . project.
ConeFamily cone_projection(const Space& space, const TimeGrid& grid,
                           const ConeFamily& family, double alpha, VolumeScale scale);

/// Mixed norm on the family: inner L^q over cells with weight
/// w_i * ln(sigma) / V(y_i, alpha*tau_j), outer weighted L^p over vertices.
/// Equals tent_norm of f on embedded families. p may be infinite.
double mixed_norm(const Space& space, const TimeGrid& grid, const ConeFamily& family,
                  double p, double q, double alpha);

/// Vector-valued pairing <<F,G>> with the inner weight matching `scale`.
double family_pairing(const Space& space, const TimeGrid& grid, const ConeFamily& f,
                      const ConeFamily& g, double alpha, VolumeScale scale);

/// Max entrywise difference between P_beta T_alpha f and
/// T_beta f * V(y, min(alpha,beta)t) / V(y, t), both sides with the unit
/// volume scale. Zero up to roundoff on every space and grid.
double aperture_identity_defect(const Space& space, const TimeGrid& grid,
                                const HalfSpaceFunction& f, double alpha, double beta);

struct RatioStats {
    double max_ratio = 1.0;
    double median_ratio = 1.0;
    double predicted_bound = 1.0; // volume-ratio bound reported for comparison
    std::string argmax;
};

/// Empirical tent-norm ratios between apertures beta and alpha over cell
/// indicators, tent indicators, and seeded random functions.
RatioStats aperture_ratio(const Space& space, const TimeGrid& grid, double p, double q,
                          double alpha, double beta, int trials, std::uint64_t seed);

/// Pairwise tent-norm ratios across the four Lusin kernel variants.
RatioStats variant_ratio(const Space& space, const TimeGrid& grid, double p, double q,
                         double alpha, int trials, std::uint64_t seed);

} // namespace tentspace

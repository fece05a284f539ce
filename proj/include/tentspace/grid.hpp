#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tentspace/space.hpp"

namespace tentspace {

class Rng;

/// Geometric discretization of the time axis. Slab j covers
/// [t_min*sigma^j, t_min*sigma^(j+1)); its representative is the geometric
/// midpoint tau_j = t_min*sigma^(j+1/2), and its dt/t mass is ln(sigma)
/// exactly. All membership predicates evaluate at the representatives.
class TimeGrid {
public:
    TimeGrid(double t_min, double sigma, int slab_count);

    double t_min() const { return t_min_; }
    double sigma() const { return sigma_; }
    int slabs() const { return slabs_; }

    double tau(int j) const { return taus_[static_cast<std::size_t>(j)]; }
    /// Slab boundaries t_min*sigma^k for k = 0..slabs().
    double boundary(int k) const { return bounds_[static_cast<std::size_t>(k)]; }

    /// Mass of one slab under dt/t.
    double log_weight() const { return log_sigma_; }
    /// Mass of one slab under plain dt, evaluated at the representative.
    double dt_weight(int j) const { return tau(j) * log_sigma_; }

    /// Number of slabs whose representative lies strictly below h.
    int truncation_count(double h) const;

private:
    double t_min_ = 0.0;
    double sigma_ = 0.0;
    double log_sigma_ = 0.0;
    int slabs_ = 0;
    std::vector<double> taus_;
    std::vector<double> bounds_;
};

/// Default grid for a space and the apertures in play: t_min small enough
/// that every exactness condition holds, t_max past twice the diameter.
TimeGrid default_grid(const Space& space, double alpha_max, double alpha_min = 1.0,
                      int slab_override = 0);

/// Real-valued samples on (slab, point) cells of the discrete upper
/// half-space.
class HalfSpaceFunction {
public:
    HalfSpaceFunction() = default;
    HalfSpaceFunction(int slabs, int points, double value = 0.0);

    int slabs() const { return slabs_; }
    int points() const { return points_; }

    double at(int j, int i) const {
        return values_[static_cast<std::size_t>(j) * static_cast<std::size_t>(points_) +
                       static_cast<std::size_t>(i)];
    }
    double& at(int j, int i) {
        return values_[static_cast<std::size_t>(j) * static_cast<std::size_t>(points_) +
                       static_cast<std::size_t>(i)];
    }

    std::span<const double> data() const { return values_; }

    bool all_finite() const;

    static HalfSpaceFunction random(int slabs, int points, Rng& rng, double lo,
                                    double hi);

private:
    int slabs_ = 0;
    int points_ = 0;
    std::vector<double> values_;
};

/// Boolean subset of the (slab, point) cells; cones, tents, and arbitrary
/// regions of the discrete upper half-space all live here.
class RegionMask {
public:
    RegionMask() = default;
    RegionMask(int slabs, int points, bool value = false);

    int slabs() const { return slabs_; }
    int points() const { return points_; }

    bool test(int j, int i) const {
        return bits_[static_cast<std::size_t>(j) * static_cast<std::size_t>(points_) +
                     static_cast<std::size_t>(i)] != 0;
    }
    void set(int j, int i, bool value = true) {
        bits_[static_cast<std::size_t>(j) * static_cast<std::size_t>(points_) +
              static_cast<std::size_t>(i)] = value ? 1 : 0;
    }

    int count() const;
    bool any() const { return count() > 0; }
    bool contains(const RegionMask& other) const; // other subset of *this

    bool operator==(const RegionMask&) const = default;

private:
    int slabs_ = 0;
    int points_ = 0;
    std::vector<std::uint8_t> bits_;
};

void require_same_shape(const Space& space, const TimeGrid& grid,
                        const HalfSpaceFunction& f);

/// Integral against d(mu) dt/t; exact for slab-constant integrands.
double integrate(const Space& space, const TimeGrid& grid,
                 const HalfSpaceFunction& phi, const RegionMask* over = nullptr);

/// Integral against plain d(mu) dt, with slab weight tau_j * ln(sigma).
double integrate_dt(const Space& space, const TimeGrid& grid,
                    const HalfSpaceFunction& phi, const RegionMask* over = nullptr);

} // namespace tentspace

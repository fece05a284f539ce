#include "tentspace/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "tentspace/rng.hpp"

namespace tentspace {

TimeGrid::TimeGrid(double t_min, double sigma, int slab_count)
    : t_min_(t_min), sigma_(sigma), slabs_(slab_count) {
    if (!(t_min > 0.0)) throw std::invalid_argument("grid: t_min must be positive");
    if (!(sigma > 1.0)) throw std::invalid_argument("grid: sigma must exceed 1");
    if (slab_count < 1) throw std::invalid_argument("grid: slab count must be at least 1");
    log_sigma_ = std::log(sigma);
    taus_.reserve(static_cast<std::size_t>(slabs_));
    bounds_.reserve(static_cast<std::size_t>(slabs_) + 1);
    for (int j = 0; j < slabs_; ++j)
        taus_.push_back(t_min_ * std::pow(sigma_, j + 0.5));
    for (int k = 0; k <= slabs_; ++k)
        bounds_.push_back(t_min_ * std::pow(sigma_, k));
}

int TimeGrid::truncation_count(double h) const {
    int c = 0;
    while (c < slabs_ && tau(c) < h) ++c;
    return c;
}

TimeGrid default_grid(const Space& space, double alpha_max, double alpha_min,
                      int slab_override) {
    if (!(alpha_max > 0.0) || !(alpha_min > 0.0))
        throw std::invalid_argument("default_grid: apertures must be positive");
    const double t_min = space.min_positive_distance() / (2.0 * alpha_max);
    const double sigma = std::sqrt(2.0);
    int slabs = slab_override;
    if (slabs <= 0) {
        const double diam = space.diameter() > 0.0 ? space.diameter() : space.min_positive_distance();
        const double t_max = 2.0 * diam / alpha_min;
        slabs = 4;
        while (slabs < 48 && t_min * std::pow(sigma, slabs) < t_max) ++slabs;
    }
    return TimeGrid(t_min, sigma, slabs);
}

HalfSpaceFunction::HalfSpaceFunction(int slabs, int points, double value)
    : slabs_(slabs), points_(points),
      values_(static_cast<std::size_t>(slabs) * static_cast<std::size_t>(points), value) {
    if (slabs < 0 || points < 0)
        throw std::invalid_argument("half-space function: negative dimensions");
}

bool HalfSpaceFunction::all_finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

HalfSpaceFunction HalfSpaceFunction::random(int slabs, int points, Rng& rng,
                                            double lo, double hi) {
    HalfSpaceFunction f(slabs, points);
    for (int j = 0; j < slabs; ++j)
        for (int i = 0; i < points; ++i) f.at(j, i) = rng.uniform(lo, hi);
    return f;
}

RegionMask::RegionMask(int slabs, int points, bool value)
    : slabs_(slabs), points_(points),
      bits_(static_cast<std::size_t>(slabs) * static_cast<std::size_t>(points),
            value ? 1 : 0) {
    if (slabs < 0 || points < 0)
        throw std::invalid_argument("region mask: negative dimensions");
}

int RegionMask::count() const {
    int c = 0;
    for (auto b : bits_) c += b ? 1 : 0;
    return c;
}

bool RegionMask::contains(const RegionMask& other) const {
    if (slabs_ != other.slabs_ || points_ != other.points_)
        throw std::invalid_argument("region mask: dimension mismatch");
    for (std::size_t k = 0; k < bits_.size(); ++k)
        if (other.bits_[k] && !bits_[k]) return false;
    return true;
}

void require_same_shape(const Space& space, const TimeGrid& grid,
                        const HalfSpaceFunction& f) {
    if (f.slabs() != grid.slabs() || f.points() != space.size())
        throw std::invalid_argument("half-space function: dimension mismatch with space/grid");
}

double integrate(const Space& space, const TimeGrid& grid,
                 const HalfSpaceFunction& phi, const RegionMask* over) {
    require_same_shape(space, grid, phi);
    if (over && (over->slabs() != grid.slabs() || over->points() != space.size()))
        throw std::invalid_argument("integrate: mask dimension mismatch");
    double acc = 0.0;
    for (int j = 0; j < grid.slabs(); ++j)
        for (int i = 0; i < space.size(); ++i)
            if (!over || over->test(j, i)) acc += phi.at(j, i) * space.weight(i);
    return acc * grid.log_weight();
}

double integrate_dt(const Space& space, const TimeGrid& grid,
                    const HalfSpaceFunction& phi, const RegionMask* over) {
    require_same_shape(space, grid, phi);
    if (over && (over->slabs() != grid.slabs() || over->points() != space.size()))
        throw std::invalid_argument("integrate: mask dimension mismatch");
    double acc = 0.0;
    for (int j = 0; j < grid.slabs(); ++j) {
        double row = 0.0;
        for (int i = 0; i < space.size(); ++i)
            if (!over || over->test(j, i)) row += phi.at(j, i) * space.weight(i);
        acc += row * grid.dt_weight(j);
    }
    return acc;
}

} // namespace tentspace

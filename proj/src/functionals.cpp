#include "tentspace/functionals.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tentspace/halfspace.hpp"

namespace tentspace {

std::vector<double> maximal(const Space& space, std::span<const double> phi) {
    if (phi.size() != static_cast<std::size_t>(space.size()))
        throw std::invalid_argument("maximal: value count does not match space");
    const int n = space.size();
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (const Ball& b : enumerate_distinct_balls(space)) {
        double mass = 0.0, sum = 0.0;
        for (int i = 0; i < n; ++i)
            if (space.dist(b.center, i) < b.radius) {
                mass += space.weight(i);
                sum += std::abs(phi[static_cast<std::size_t>(i)]) * space.weight(i);
            }
        const double avg = sum / mass;
        for (int i = 0; i < n; ++i)
            if (space.dist(b.center, i) < b.radius)
                out[static_cast<std::size_t>(i)] =
                    std::max(out[static_cast<std::size_t>(i)], avg);
    }
    return out;
}

std::vector<double> ball_average(const Space& space, std::span<const double> phi,
                                 double s) {
    if (!(s > 0.0)) throw std::invalid_argument("ball_average: scale must be positive");
    if (phi.size() != static_cast<std::size_t>(space.size()))
        throw std::invalid_argument("ball_average: value count does not match space");
    const int n = space.size();
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (int y = 0; y < n; ++y) {
        double mass = 0.0, sum = 0.0;
        for (int i = 0; i < n; ++i)
            if (space.dist(y, i) < s) {
                mass += space.weight(i);
                sum += phi[static_cast<std::size_t>(i)] * space.weight(i);
            }
        out[static_cast<std::size_t>(y)] = sum / mass;
    }
    return out;
}

std::vector<double> lusin_a(const Space& space, const TimeGrid& grid,
                            const HalfSpaceFunction& f, double q, double alpha,
                            AVariant variant, std::optional<double> height) {
    if (!(q > 0.0)) throw std::invalid_argument("lusin_a: q must be positive");
    if (!(alpha > 0.0)) throw std::invalid_argument("lusin_a: aperture must be positive");
    require_same_shape(space, grid, f);
    const int n = space.size();
    const bool center_vertex = variant.center == AVariant::Center::vertex;
    const double scale = variant.scale == AVariant::Scale::aperture ? alpha : 1.0;

    // V(center, scale*tau_j) per slab, for every candidate center point.
    HalfSpaceFunction vols(grid.slabs(), n);
    for (int j = 0; j < grid.slabs(); ++j)
        for (int i = 0; i < n; ++i) vols.at(j, i) = space.volume(i, scale * grid.tau(j));

    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (int x = 0; x < n; ++x) {
        double acc = 0.0;
        for (int j = 0; j < grid.slabs(); ++j) {
            const double t = grid.tau(j);
            if (height && !(t < *height)) continue;
            const double reach = alpha * t;
            const double vol_vertex = center_vertex ? vols.at(j, x) : 0.0;
            for (int i = 0; i < n; ++i) {
                if (!(space.dist(x, i) < reach)) continue;
                const double v = center_vertex ? vol_vertex : vols.at(j, i);
                acc += std::pow(std::abs(f.at(j, i)), q) * space.weight(i) / v;
            }
        }
        out[static_cast<std::size_t>(x)] = std::pow(acc * grid.log_weight(), 1.0 / q);
    }
    return out;
}

std::vector<double> carleson_c(const Space& space, const TimeGrid& grid,
                               const HalfSpaceFunction& f, double q, double alpha) {
    if (!(q > 0.0)) throw std::invalid_argument("carleson_c: q must be positive");
    if (!(alpha > 0.0)) throw std::invalid_argument("carleson_c: aperture must be positive");
    require_same_shape(space, grid, f);
    const int n = space.size();
    HalfSpaceFunction fq(grid.slabs(), n);
    for (int j = 0; j < grid.slabs(); ++j)
        for (int i = 0; i < n; ++i)
            fq.at(j, i) = std::pow(std::abs(f.at(j, i)), q);

    std::vector<double> best(static_cast<std::size_t>(n), 0.0);
    for (const Ball& b : enumerate_distinct_balls(space)) {
        const RegionMask tent =
            tent_mask(space, grid, space.ball_set(b.center, b.radius), alpha);
        const double value =
            integrate(space, grid, fq, &tent) / space.volume(b.center, b.radius);
        for (int i = 0; i < n; ++i)
            if (space.dist(b.center, i) < b.radius)
                best[static_cast<std::size_t>(i)] =
                    std::max(best[static_cast<std::size_t>(i)], value);
    }
    for (double& v : best) v = std::pow(v, 1.0 / q);
    return best;
}

double lp_norm(const Space& space, std::span<const double> values, double p) {
    if (values.size() != static_cast<std::size_t>(space.size()))
        throw std::invalid_argument("lp_norm: value count does not match space");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p > 0.0)) throw std::invalid_argument("lp_norm: p must be positive");
    double acc = 0.0;
    for (int i = 0; i < space.size(); ++i)
        acc += std::pow(std::abs(values[static_cast<std::size_t>(i)]), p) * space.weight(i);
    return std::pow(acc, 1.0 / p);
}

double tent_norm(const Space& space, const TimeGrid& grid, const HalfSpaceFunction& f,
                 double p, double q, double alpha, AVariant variant) {
    if (!(q > 0.0)) throw std::invalid_argument("tent_norm: q must be positive");
    if (std::isinf(p)) {
        const auto c = carleson_c(space, grid, f, q, alpha);
        double m = 0.0;
        for (double v : c) m = std::max(m, v);
        return m;
    }
    if (!(p > 0.0)) throw std::invalid_argument("tent_norm: p must be positive");
    return lp_norm(space, lusin_a(space, grid, f, q, alpha, variant), p);
}

double pairing(const Space& space, const TimeGrid& grid, const HalfSpaceFunction& f,
               const HalfSpaceFunction& g) {
    require_same_shape(space, grid, f);
    require_same_shape(space, grid, g);
    double acc = 0.0;
    for (int j = 0; j < grid.slabs(); ++j)
        for (int i = 0; i < space.size(); ++i)
            acc += f.at(j, i) * g.at(j, i) * space.weight(i);
    return acc * grid.log_weight();
}

std::vector<double> stopping_height(const Space& space, const TimeGrid& grid,
                                    const HalfSpaceFunction& g, double q,
                                    double big_m, double alpha) {
    if (!(q >= 1.0)) throw std::invalid_argument("stopping_height: q must be at least 1");
    if (!(big_m > 0.0)) throw std::invalid_argument("stopping_height: M must be positive");
    if (!(alpha > 0.0)) throw std::invalid_argument("stopping_height: aperture must be positive");
    require_same_shape(space, grid, g);

    const int n = space.size();
    const auto c = carleson_c(space, grid, g, q, alpha);

    HalfSpaceFunction vols(grid.slabs(), n);
    for (int j = 0; j < grid.slabs(); ++j)
        for (int i = 0; i < n; ++i) vols.at(j, i) = space.volume(i, alpha * grid.tau(j));

    std::vector<double> out(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        // compare accumulated q-th powers; the scan is monotone in the height
        const double threshold =
            std::pow(big_m * c[static_cast<std::size_t>(x)], q) / grid.log_weight();
        double acc = 0.0;
        int best = 0;
        for (int j = 0; j < grid.slabs(); ++j) {
            const double reach = alpha * grid.tau(j);
            for (int i = 0; i < n; ++i)
                if (space.dist(x, i) < reach)
                    acc += std::pow(std::abs(g.at(j, i)), q) * space.weight(i) /
                           vols.at(j, i);
            if (acc <= threshold) best = j + 1;
            else break;
        }
        out[static_cast<std::size_t>(x)] =
            best == grid.slabs() ? std::numeric_limits<double>::infinity()
                                 : grid.boundary(best);
    }
    return out;
}

} // namespace tentspace

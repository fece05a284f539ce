#include "tentspace/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tentspace/halfspace.hpp"
#include "tentspace/rng.hpp"

namespace tentspace {

ConeFamily::ConeFamily(int points, int slabs)
    : points_(points), slabs_(slabs),
      values_(static_cast<std::size_t>(points) * static_cast<std::size_t>(slabs) *
                  static_cast<std::size_t>(points),
              0.0) {
    if (points < 0 || slabs < 0)
        throw std::invalid_argument("cone family: negative dimensions");
}

double ConeFamily::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

namespace {

void require_family_shape(const Space& space, const TimeGrid& grid,
                          const ConeFamily& family) {
    if (family.points() != space.size() || family.slabs() != grid.slabs())
        throw std::invalid_argument("cone family: dimension mismatch with space/grid");
}

double scale_factor(VolumeScale scale, double alpha) {
    return scale == VolumeScale::aperture ? alpha : 1.0;
}

} // namespace

ConeFamily embed(const Space& space, const TimeGrid& grid, const HalfSpaceFunction& f,
                 double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("embed: aperture must be positive");
    require_same_shape(space, grid, f);
    const int n = space.size();
    ConeFamily family(n, grid.slabs());
    for (int x = 0; x < n; ++x)
        for (int j = 0; j < grid.slabs(); ++j) {
            const double reach = alpha * grid.tau(j);
            for (int i = 0; i < n; ++i)
                if (space.dist(x, i) < reach) family.at(x, j, i) = f.at(j, i);
        }
    return family;
}

HalfSpaceFunction project(const Space& space, const TimeGrid& grid,
                          const ConeFamily& family, double alpha, VolumeScale scale) {
    if (!(alpha > 0.0)) throw std::invalid_argument("project: aperture must be positive");
    require_family_shape(space, grid, family);
    const int n = space.size();
    const double s = scale_factor(scale, alpha);
    HalfSpaceFunction out(grid.slabs(), n);
    for (int j = 0; j < grid.slabs(); ++j) {
        const double reach = alpha * grid.tau(j);
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int x = 0; x < n; ++x)
                if (space.dist(x, i) < reach) acc += family.at(x, j, i) * space.weight(x);
            out.at(j, i) = acc / space.volume(i, s * grid.tau(j));
        }
    }
    return out;
}

ConeFamily cone_projection(const Space& space, const TimeGrid& grid,
                           const ConeFamily& family, double alpha, VolumeScale scale) {
    return embed(space, grid, project(space, grid, family, alpha, scale), alpha);
}

double mixed_norm(const Space& space, const TimeGrid& grid, const ConeFamily& family,
                  double p, double q, double alpha) {
    if (!(q > 0.0)) throw std::invalid_argument("mixed_norm: q must be positive");
    if (!std::isinf(p) && !(p > 0.0))
        throw std::invalid_argument("mixed_norm: p must be positive");
    if (!(alpha > 0.0)) throw std::invalid_argument("mixed_norm: aperture must be positive");
    require_family_shape(space, grid, family);
    const int n = space.size();

    HalfSpaceFunction vols(grid.slabs(), n);
    for (int j = 0; j < grid.slabs(); ++j)
        for (int i = 0; i < n; ++i) vols.at(j, i) = space.volume(i, alpha * grid.tau(j));

    double outer = 0.0;
    double sup = 0.0;
    for (int x = 0; x < n; ++x) {
        double inner = 0.0;
        for (int j = 0; j < grid.slabs(); ++j)
            for (int i = 0; i < n; ++i)
                inner += std::pow(std::abs(family.at(x, j, i)), q) * space.weight(i) /
                         vols.at(j, i);
        const double inner_norm = std::pow(inner * grid.log_weight(), 1.0 / q);
        if (std::isinf(p)) sup = std::max(sup, inner_norm);
        else outer += std::pow(inner_norm, p) * space.weight(x);
    }
    return std::isinf(p) ? sup : std::pow(outer, 1.0 / p);
}

double family_pairing(const Space& space, const TimeGrid& grid, const ConeFamily& f,
                      const ConeFamily& g, double alpha, VolumeScale scale) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("family_pairing: aperture must be positive");
    require_family_shape(space, grid, f);
    require_family_shape(space, grid, g);
    const int n = space.size();
    const double s = scale_factor(scale, alpha);
    HalfSpaceFunction vols(grid.slabs(), n);
    for (int j = 0; j < grid.slabs(); ++j)
        for (int i = 0; i < n; ++i) vols.at(j, i) = space.volume(i, s * grid.tau(j));
    double acc = 0.0;
    for (int x = 0; x < n; ++x) {
        double inner = 0.0;
        for (int j = 0; j < grid.slabs(); ++j)
            for (int i = 0; i < n; ++i)
                inner += f.at(x, j, i) * g.at(x, j, i) * space.weight(i) / vols.at(j, i);
        acc += inner * space.weight(x);
    }
    return acc * grid.log_weight();
}

double aperture_identity_defect(const Space& space, const TimeGrid& grid,
                                const HalfSpaceFunction& f, double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("aperture_identity_defect: apertures must be positive");
    require_same_shape(space, grid, f);
    const int n = space.size();
    const ConeFamily lhs =
        cone_projection(space, grid, embed(space, grid, f, alpha), beta, VolumeScale::unit);
    const ConeFamily t_beta = embed(space, grid, f, beta);
    const double mn = std::min(alpha, beta);
    double defect = 0.0;
    for (int j = 0; j < grid.slabs(); ++j) {
        const double t = grid.tau(j);
        for (int i = 0; i < n; ++i) {
            const double ratio = space.volume(i, mn * t) / space.volume(i, t);
            for (int x = 0; x < n; ++x)
                defect = std::max(
                    defect, std::abs(lhs.at(x, j, i) - t_beta.at(x, j, i) * ratio));
        }
    }
    return defect;
}

namespace {

// Shared test family for the empirical ratio reports: cell indicators, tents
// over balls, and seeded random functions.
template <typename Eval>
RatioStats ratio_stats_over_family(const Space& space, const TimeGrid& grid, int trials,
                                   std::uint64_t seed, Eval&& eval) {
    std::vector<std::pair<double, std::string>> ratios;
    const int n = space.size();

    for (int j = 0; j < grid.slabs(); ++j)
        for (int i = 0; i < n; ++i) {
            HalfSpaceFunction f(grid.slabs(), n);
            f.at(j, i) = 1.0;
            ratios.emplace_back(eval(f), "cell(" + std::to_string(j) + "," +
                                             std::to_string(i) + ")");
        }
    const auto balls = enumerate_distinct_balls(space);
    for (std::size_t k = 0; k < balls.size(); ++k) {
        const RegionMask tent = tent_mask(
            space, grid, space.ball_set(balls[k].center, balls[k].radius), 1.0);
        if (!tent.any()) continue;
        HalfSpaceFunction f(grid.slabs(), n);
        for (int j = 0; j < grid.slabs(); ++j)
            for (int i = 0; i < n; ++i)
                if (tent.test(j, i)) f.at(j, i) = 1.0;
        ratios.emplace_back(eval(f), "tent_indicator(" + std::to_string(k) + ")");
    }
    Rng rng(seed);
    for (int t = 0; t < trials; ++t)
        ratios.emplace_back(
            eval(HalfSpaceFunction::random(grid.slabs(), n, rng, -1.0, 1.0)),
            "random(" + std::to_string(t) + ")");

    RatioStats stats;
    std::vector<double> values;
    for (const auto& [r, label] : ratios) {
        values.push_back(r);
        if (r > stats.max_ratio || stats.argmax.empty()) {
            stats.max_ratio = r;
            stats.argmax = label;
        }
    }
    std::sort(values.begin(), values.end());
    stats.median_ratio = values[values.size() / 2];
    return stats;
}

} // namespace

RatioStats aperture_ratio(const Space& space, const TimeGrid& grid, double p, double q,
                          double alpha, double beta, int trials, std::uint64_t seed) {
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("aperture_ratio: apertures must be positive");
    if (!(p > 0.0) || !(q > 0.0))
        throw std::invalid_argument("aperture_ratio: exponents must be positive");
    RatioStats stats = ratio_stats_over_family(
        space, grid, trials, seed, [&](const HalfSpaceFunction& f) {
            const double na = tent_norm(space, grid, f, p, q, alpha);
            const double nb = tent_norm(space, grid, f, p, q, beta);
            return na > 0.0 ? nb / na : 1.0;
        });

    // Volume-ratio bound sup (V(y,t)/V(y,bt))^M with b = min/max aperture and
    // M the smallest integer making both Mp and Mq exceed 1.
    const double lo = std::min(alpha, beta), hi = std::max(alpha, beta);
    int m_pow = 1;
    while (m_pow * std::min(p, q) <= 1.0) ++m_pow;
    double sup = 1.0;
    for (int j = 0; j < grid.slabs(); ++j)
        for (int i = 0; i < space.size(); ++i) {
            const double t = grid.tau(j);
            sup = std::max(sup, space.volume(i, hi * t) / space.volume(i, lo * t));
        }
    stats.predicted_bound = std::pow(sup, m_pow);
    return stats;
}

RatioStats variant_ratio(const Space& space, const TimeGrid& grid, double p, double q,
                         double alpha, int trials, std::uint64_t seed) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("variant_ratio: aperture must be positive");
    if (!(p > 0.0) || !(q > 0.0))
        throw std::invalid_argument("variant_ratio: exponents must be positive");
    const AVariant variants[4] = {
        {AVariant::Center::integration_point, AVariant::Scale::aperture},
        {AVariant::Center::integration_point, AVariant::Scale::unit},
        {AVariant::Center::vertex, AVariant::Scale::aperture},
        {AVariant::Center::vertex, AVariant::Scale::unit},
    };
    RatioStats stats = ratio_stats_over_family(
        space, grid, trials, seed, [&](const HalfSpaceFunction& f) {
            double norms[4];
            for (int v = 0; v < 4; ++v)
                norms[v] = tent_norm(space, grid, f, p, q, alpha, variants[v]);
            double worst = 1.0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    if (norms[b] > 0.0) worst = std::max(worst, norms[a] / norms[b]);
            return worst;
        });
    stats.predicted_bound = stats.max_ratio;
    return stats;
}

} // namespace tentspace

#include "tentspace/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "tentspace/rng.hpp"

namespace tentspace {

namespace {

constexpr double kTriangleTol = 1e-9;

std::vector<std::string> default_ids(int n) {
    std::vector<std::string> ids;
    ids.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i));
    return ids;
}

} // namespace

bool PointSet::empty() const {
    for (auto b : bits_)
        if (b) return false;
    return true;
}

int PointSet::count() const {
    int c = 0;
    for (auto b : bits_) c += b ? 1 : 0;
    return c;
}

PointSet PointSet::complement() const {
    PointSet out(size());
    for (int i = 0; i < size(); ++i)
        if (!contains(i)) out.add(i);
    return out;
}

bool PointSet::is_subset_of(const PointSet& other) const {
    for (int i = 0; i < size(); ++i)
        if (contains(i) && !other.contains(i)) return false;
    return true;
}

Space Space::from_distance_matrix(std::vector<std::string> ids,
                                  std::vector<double> dist,
                                  std::vector<double> weight) {
    Space s;
    s.n_ = static_cast<int>(weight.size());
    s.ids_ = ids.empty() ? default_ids(s.n_) : std::move(ids);
    s.dist_ = std::move(dist);
    s.weight_ = std::move(weight);
    s.finalize_and_validate();
    return s;
}

Space Space::from_points(std::vector<std::string> ids, std::vector<double> coords,
                         int dim, std::vector<double> weight) {
    Space s;
    s.n_ = static_cast<int>(weight.size());
    if (dim <= 0) throw std::invalid_argument("space: coordinate dimension must be positive");
    if (coords.size() != static_cast<std::size_t>(s.n_) * static_cast<std::size_t>(dim))
        throw std::invalid_argument("space: coordinate row count does not match weight count");
    s.ids_ = ids.empty() ? default_ids(s.n_) : std::move(ids);
    s.dim_ = dim;
    s.coords_ = std::move(coords);
    s.weight_ = std::move(weight);
    s.dist_.assign(static_cast<std::size_t>(s.n_) * static_cast<std::size_t>(s.n_), 0.0);
    for (int i = 0; i < s.n_; ++i) {
        for (int j = i + 1; j < s.n_; ++j) {
            double acc = 0.0;
            for (int k = 0; k < dim; ++k) {
                const double d = s.coord(i, k) - s.coord(j, k);
                acc += d * d;
            }
            const double d = std::sqrt(acc);
            s.dist_[static_cast<std::size_t>(i) * s.n_ + j] = d;
            s.dist_[static_cast<std::size_t>(j) * s.n_ + i] = d;
        }
    }
    s.finalize_and_validate();
    return s;
}

void Space::finalize_and_validate() {
    if (n_ < 1) throw std::invalid_argument("space: point count must be at least 1");
    if (ids_.size() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("space: id count does not match point count");
    if (dist_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_))
        throw std::invalid_argument("space: distance matrix size does not match point count");

    total_mass_ = 0.0;
    for (int i = 0; i < n_; ++i) {
        if (!(weight_[static_cast<std::size_t>(i)] > 0.0))
            throw std::invalid_argument("space: non-positive weight at point " + ids_[static_cast<std::size_t>(i)]);
        total_mass_ += weight_[static_cast<std::size_t>(i)];
    }

    diameter_ = 0.0;
    min_positive_dist_ = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_; ++i) {
        if (dist(i, i) != 0.0)
            throw std::invalid_argument("space: nonzero diagonal in distance matrix");
        for (int j = 0; j < n_; ++j) {
            const double d = dist(i, j);
            if (!(d >= 0.0) || !std::isfinite(d))
                throw std::invalid_argument("space: invalid distance entry");
            if (i != j && d <= 0.0)
                throw std::invalid_argument("space: zero distance between distinct points");
            if (d != dist(j, i))
                throw std::invalid_argument("space: distance matrix is not symmetric");
            diameter_ = std::max(diameter_, d);
            if (i != j) min_positive_dist_ = std::min(min_positive_dist_, d);
        }
    }
    if (!std::isfinite(min_positive_dist_)) min_positive_dist_ = 1.0;

    // Exhaustive triangle check at desk scale; seeded sample above it.
    if (n_ <= 512) {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                for (int k = 0; k < n_; ++k)
                    if (dist(i, k) > dist(i, j) + dist(j, k) + kTriangleTol)
                        throw std::invalid_argument("space: triangle inequality violated");
    } else {
        Rng rng(0x7472690a);
        const std::size_t samples = 2'000'000;
        for (std::size_t t = 0; t < samples; ++t) {
            const int i = static_cast<int>(rng.below(static_cast<std::size_t>(n_)));
            const int j = static_cast<int>(rng.below(static_cast<std::size_t>(n_)));
            const int k = static_cast<int>(rng.below(static_cast<std::size_t>(n_)));
            if (dist(i, k) > dist(i, j) + dist(j, k) + kTriangleTol)
                throw std::invalid_argument("space: triangle inequality violated");
        }
    }
}

int Space::index_of(const std::string& id) const {
    for (int i = 0; i < n_; ++i)
        if (ids_[static_cast<std::size_t>(i)] == id) return i;
    throw std::invalid_argument("space: unknown point id '" + id + "'");
}

double Space::volume(int x, double r) const {
    if (x < 0 || x >= n_) throw std::invalid_argument("volume: point index out of range");
    if (!(r > 0.0)) throw std::invalid_argument("volume: radius must be positive");
    double v = 0.0;
    for (int i = 0; i < n_; ++i)
        if (dist(x, i) < r) v += weight(i);
    return v;
}

std::vector<int> Space::ball_members(int x, double r) const {
    std::vector<int> members;
    for (int i = 0; i < n_; ++i)
        if (dist(x, i) < r) members.push_back(i);
    return members;
}

PointSet Space::ball_set(int x, double r) const {
    PointSet s(n_);
    for (int i = 0; i < n_; ++i)
        if (dist(x, i) < r) s.add(i);
    return s;
}

double Space::set_mass(const PointSet& s) const {
    double m = 0.0;
    for (int i = 0; i < n_; ++i)
        if (s.contains(i)) m += weight(i);
    return m;
}

double Space::dist_to_set(int y, const PointSet& s) const {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_; ++i)
        if (s.contains(i)) best = std::min(best, dist(y, i));
    return best;
}

std::vector<Ball> enumerate_distinct_balls(const Space& space) {
    std::vector<Ball> out;
    const int n = space.size();
    std::vector<double> d(static_cast<std::size_t>(n));
    for (int z = 0; z < n; ++z) {
        for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = space.dist(z, i);
        std::sort(d.begin(), d.end());
        d.erase(std::unique(d.begin(), d.end()), d.end());
        for (std::size_t k = 0; k + 1 < d.size(); ++k)
            out.push_back({z, 0.5 * (d[k] + d[k + 1])});
        out.push_back({z, d.back() + 1.0});
    }
    return out;
}

DoublingReport doubling_constant(const Space& space, std::span<const double> radii) {
    if (radii.empty()) throw std::invalid_argument("doubling_constant: empty radius list");
    DoublingReport report;
    report.constant = 0.0;
    for (double r : radii) {
        if (!(r > 0.0)) throw std::invalid_argument("doubling_constant: radii must be positive");
        double worst = 0.0;
        for (int x = 0; x < space.size(); ++x) {
            const double ratio = space.volume(x, 2.0 * r) / space.volume(x, r);
            if (ratio > worst) worst = ratio;
            if (ratio > report.constant) {
                report.constant = ratio;
                report.argmax_center = x;
                report.argmax_radius = r;
            }
        }
        report.per_radius.emplace_back(r, worst);
    }
    report.strictly_increasing = report.per_radius.size() >= 2;
    for (std::size_t k = 0; k + 1 < report.per_radius.size(); ++k)
        if (!(report.per_radius[k].second < report.per_radius[k + 1].second))
            report.strictly_increasing = false;
    return report;
}

NiReport ni_constant(const Space& space, double alpha, double beta,
                     std::span<const double> radii) {
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("ni_constant: alpha and beta must be positive");
    if (radii.empty()) throw std::invalid_argument("ni_constant: empty radius list");
    NiReport report;
    report.value = 1.0;
    const int n = space.size();
    for (double r : radii) {
        const double ra = alpha * r;
        const double rb = beta * r;
        for (int x = 0; x < n; ++x) {
            const double vx = space.volume(x, ra);
            for (int y = 0; y < n; ++y) {
                if (!(space.dist(x, y) < ra)) continue;
                double inter = 0.0;
                for (int z = 0; z < n; ++z)
                    if (space.dist(x, z) < ra && space.dist(y, z) < rb)
                        inter += space.weight(z);
                const double ratio = inter / vx;
                if (ratio < report.value) {
                    report.value = ratio;
                    report.argmin_radius = r;
                    report.argmin_x = x;
                    report.argmin_y = y;
                }
            }
        }
    }
    return report;
}

namespace {

double weighted_lp(const Space& space, const std::vector<double>& values, double p) {
    double acc = 0.0;
    for (int i = 0; i < space.size(); ++i)
        acc += std::pow(std::abs(values[static_cast<std::size_t>(i)]), p) * space.weight(i);
    return std::pow(acc, 1.0 / p);
}

// Uncentred maximal averages over an explicit ball family.
std::vector<double> maximal_over(const Space& space, const std::vector<Ball>& balls,
                                 const std::vector<double>& phi) {
    const int n = space.size();
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (const Ball& b : balls) {
        double mass = 0.0, sum = 0.0;
        for (int i = 0; i < n; ++i) {
            if (space.dist(b.center, i) < b.radius) {
                mass += space.weight(i);
                sum += std::abs(phi[static_cast<std::size_t>(i)]) * space.weight(i);
            }
        }
        const double avg = sum / mass;
        for (int i = 0; i < n; ++i)
            if (space.dist(b.center, i) < b.radius)
                out[static_cast<std::size_t>(i)] = std::max(out[static_cast<std::size_t>(i)], avg);
    }
    return out;
}

} // namespace

HlReport hl_ratio(const Space& space, double r_exponent, int trials,
                  std::uint64_t seed) {
    if (!(r_exponent > 1.0))
        throw std::invalid_argument("hl_ratio: exponent must exceed 1");
    if (trials < 1) throw std::invalid_argument("hl_ratio: trials must be at least 1");

    const int n = space.size();
    auto balls = enumerate_distinct_balls(space);
    HlReport report;
    report.seed = seed;
    report.lower_bound = 0.0;

    auto consider = [&](const std::vector<double>& f, const std::string& label) {
        const double nf = weighted_lp(space, f, r_exponent);
        if (!(nf > 0.0)) return;
        const double nm = weighted_lp(space, maximal_over(space, balls, f), r_exponent);
        const double ratio = nm / nf;
        if (ratio > report.lower_bound) {
            report.lower_bound = ratio;
            report.argmax = label;
        }
    };

    std::vector<double> f(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        std::fill(f.begin(), f.end(), 0.0);
        f[static_cast<std::size_t>(i)] = 1.0;
        consider(f, "indicator(" + space.ids()[static_cast<std::size_t>(i)] + ")");
    }
    // Ball indicators; seeded subsample when the family is large.
    Rng pick(seed ^ 0x62616c6cull);
    std::vector<std::size_t> chosen;
    if (balls.size() <= 512) {
        for (std::size_t k = 0; k < balls.size(); ++k) chosen.push_back(k);
    } else {
        for (int k = 0; k < 512; ++k) chosen.push_back(pick.below(balls.size()));
    }
    for (std::size_t k : chosen) {
        std::fill(f.begin(), f.end(), 0.0);
        for (int i = 0; i < n; ++i)
            if (space.dist(balls[k].center, i) < balls[k].radius)
                f[static_cast<std::size_t>(i)] = 1.0;
        consider(f, "ball_indicator(" + std::to_string(k) + ")");
    }
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        for (int i = 0; i < n; ++i) f[static_cast<std::size_t>(i)] = rng.uniform();
        consider(f, "random(" + std::to_string(t) + ")");
    }
    return report;
}

SpaceKind space_kind_from_string(const std::string& name) {
    if (name == "uniform_grid_1d") return SpaceKind::uniform_grid_1d;
    if (name == "uniform_grid_2d") return SpaceKind::uniform_grid_2d;
    if (name == "gaussian_plane") return SpaceKind::gaussian_plane;
    if (name == "strip_removed_plane") return SpaceKind::strip_removed_plane;
    if (name == "random_cloud") return SpaceKind::random_cloud;
    throw std::invalid_argument("unknown space kind '" + name + "'");
}

std::string to_string(SpaceKind kind) {
    switch (kind) {
        case SpaceKind::uniform_grid_1d: return "uniform_grid_1d";
        case SpaceKind::uniform_grid_2d: return "uniform_grid_2d";
        case SpaceKind::gaussian_plane: return "gaussian_plane";
        case SpaceKind::strip_removed_plane: return "strip_removed_plane";
        case SpaceKind::random_cloud: return "random_cloud";
    }
    return "unknown";
}

Space generate_space(SpaceKind kind, const SpaceParams& params) {
    if (!(params.spacing > 0.0))
        throw std::invalid_argument("generate_space: spacing must be positive");
    std::vector<double> coords;
    std::vector<double> weight;

    switch (kind) {
        case SpaceKind::uniform_grid_1d: {
            if (params.n < 1) throw std::invalid_argument("generate_space: n must be at least 1");
            for (int i = 0; i < params.n; ++i) {
                coords.push_back(params.spacing * i);
                weight.push_back(1.0);
            }
            return Space::from_points({}, std::move(coords), 1, std::move(weight));
        }
        case SpaceKind::uniform_grid_2d: {
            if (params.nx < 1 || params.ny < 1)
                throw std::invalid_argument("generate_space: grid dimensions must be positive");
            for (int j = 0; j < params.ny; ++j)
                for (int i = 0; i < params.nx; ++i) {
                    coords.push_back(params.spacing * i);
                    coords.push_back(params.spacing * j);
                    weight.push_back(1.0);
                }
            return Space::from_points({}, std::move(coords), 2, std::move(weight));
        }
        case SpaceKind::gaussian_plane: {
            if (params.nx < 1 || params.ny < 1)
                throw std::invalid_argument("generate_space: grid dimensions must be positive");
            for (int j = 0; j < params.ny; ++j)
                for (int i = 0; i < params.nx; ++i) {
                    const double x = params.spacing * i;
                    const double y = params.spacing * j;
                    coords.push_back(x);
                    coords.push_back(y);
                    weight.push_back(std::exp(-(x * x + y * y)));
                }
            return Space::from_points({}, std::move(coords), 2, std::move(weight));
        }
        case SpaceKind::strip_removed_plane: {
            if (params.nx < 1 || params.ny < 1)
                throw std::invalid_argument("generate_space: grid dimensions must be positive");
            if (!(params.gap > 0.0))
                throw std::invalid_argument("generate_space: gap must be positive");
            const double offset = params.spacing * (params.nx - 1) + params.gap;
            for (int j = 0; j < params.ny; ++j)
                for (int i = 0; i < params.nx; ++i) {
                    coords.push_back(params.spacing * i);
                    coords.push_back(params.spacing * j);
                    weight.push_back(1.0);
                }
            for (int j = 0; j < params.ny; ++j)
                for (int i = 0; i < params.nx; ++i) {
                    coords.push_back(offset + params.spacing * i);
                    coords.push_back(params.spacing * j);
                    weight.push_back(1.0);
                }
            return Space::from_points({}, std::move(coords), 2, std::move(weight));
        }
        case SpaceKind::random_cloud: {
            if (params.n < 1) throw std::invalid_argument("generate_space: n must be at least 1");
            Rng rng(params.seed);
            for (int i = 0; i < params.n; ++i) {
                coords.push_back(rng.uniform());
                coords.push_back(rng.uniform());
                weight.push_back(rng.uniform(0.5, 1.5));
            }
            return Space::from_points({}, std::move(coords), 2, std::move(weight));
        }
    }
    throw std::invalid_argument("generate_space: unknown kind");
}

std::vector<double> default_audit_radii(const Space& space) {
    std::vector<double> radii;
    double r = 0.5 * space.min_positive_distance();
    const double diam = space.diameter() > 0.0 ? space.diameter() : 2.0 * r;
    while (2.0 * r <= diam) {
        radii.push_back(r);
        r *= 2.0;
    }
    if (radii.empty()) radii.push_back(r);
    return radii;
}

GeometryAudit audit_space(const Space& space, const AuditConfig& config) {
    GeometryAudit audit;
    audit.seed = config.seed;
    audit.radii = config.radii.empty() ? default_audit_radii(space) : config.radii;
    audit.doubling = doubling_constant(space, audit.radii);
    for (auto [a, b] : config.ni_pairs)
        audit.ni.emplace_back(std::make_pair(a, b), ni_constant(space, a, b, audit.radii));
    for (double r : config.hl_exponents)
        audit.hl.emplace_back(r, hl_ratio(space, r, config.hl_trials, config.seed));
    return audit;
}

} // namespace tentspace

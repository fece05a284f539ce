#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tentspace {

/// Open ball B(center, radius): members are points at distance strictly
/// less than `radius` from the center point.
struct Ball {
    int center = 0;
    double radius = 0.0;
};

/// Subset of the point set, one flag per point index.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(int n, bool value = false)
        : bits_(static_cast<std::size_t>(n), value ? 1 : 0) {}

    static PointSet of(int n, std::initializer_list<int> members) {
        PointSet s(n);
        for (int i : members) s.add(i);
        return s;
    }

    int size() const { return static_cast<int>(bits_.size()); }
    bool contains(int i) const { return bits_[static_cast<std::size_t>(i)] != 0; }
    void add(int i) { bits_[static_cast<std::size_t>(i)] = 1; }
    void remove(int i) { bits_[static_cast<std::size_t>(i)] = 0; }

    bool empty() const;
    int count() const;
    PointSet complement() const;
    bool is_subset_of(const PointSet& other) const;

    bool operator==(const PointSet&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

/// Finite metric measure space: a point set with pairwise distances and
/// strictly positive per-point weights. The distance matrix is validated at
/// construction: symmetry, zero diagonal, positivity off the diagonal, and
/// the triangle inequality within 1e-9. A violation is a hard error.
class Space {
public:
    /// Explicit distance matrix (row-major n*n) plus weights.
    static Space from_distance_matrix(std::vector<std::string> ids,
                                      std::vector<double> dist,
                                      std::vector<double> weight);

    /// Euclidean point cloud: coords is row-major n*dim.
    static Space from_points(std::vector<std::string> ids,
                             std::vector<double> coords, int dim,
                             std::vector<double> weight);

    int size() const { return n_; }
    const std::vector<std::string>& ids() const { return ids_; }
    int index_of(const std::string& id) const; // throws on unknown id

    double dist(int i, int j) const {
        return dist_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                     static_cast<std::size_t>(j)];
    }
    double weight(int i) const { return weight_[static_cast<std::size_t>(i)]; }

    double total_mass() const { return total_mass_; }
    double diameter() const { return diameter_; }
    /// Smallest nonzero pairwise distance; 1.0 on a one-point space.
    double min_positive_distance() const { return min_positive_dist_; }

    bool has_coords() const { return dim_ > 0; }
    int coord_dim() const { return dim_; }
    double coord(int i, int k) const {
        return coords_[static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_) +
                       static_cast<std::size_t>(k)];
    }

    /// mu(B(x,r)) for the open ball; positive for every r > 0.
    double volume(int x, double r) const;
    std::vector<int> ball_members(int x, double r) const;
    PointSet ball_set(int x, double r) const;

    /// Weighted mass of an arbitrary subset.
    double set_mass(const PointSet& s) const;

    /// min over members of d(y, .); +infinity when the set is empty.
    double dist_to_set(int y, const PointSet& s) const;

private:
    Space() = default;
    void finalize_and_validate();

    int n_ = 0;
    int dim_ = 0;
    std::vector<std::string> ids_;
    std::vector<double> dist_;
    std::vector<double> weight_;
    std::vector<double> coords_;
    double total_mass_ = 0.0;
    double diameter_ = 0.0;
    double min_positive_dist_ = 1.0;
};

/// One ball per distinct member set of the space, for every center: radii sit
/// at midpoints between consecutive distinct distances, plus one radius past
/// the largest distance. Every open ball of the space has the same member set
/// as exactly one entry per center.
std::vector<Ball> enumerate_distinct_balls(const Space& space);

struct DoublingReport {
    double constant = 1.0; // max over centers and tested radii of V(x,2r)/V(x,r)
    int argmax_center = 0;
    double argmax_radius = 0.0;
    // per tested radius: max over centers of V(x,2r)/V(x,r)
    std::vector<std::pair<double, double>> per_radius;
    bool strictly_increasing = false; // per-radius maxima grow with the scale
};
DoublingReport doubling_constant(const Space& space, std::span<const double> radii);

struct NiReport {
    double value = 1.0; // inf over radii and ordered pairs with d(x,y) < alpha*r
    double argmin_radius = 0.0;
    int argmin_x = 0;
    int argmin_y = 0;
};
NiReport ni_constant(const Space& space, double alpha, double beta,
                     std::span<const double> radii);

struct HlReport {
    double lower_bound = 1.0; // empirical lower bound of ||M||_{r->r}
    std::string argmax;       // which test function attained it
    std::uint64_t seed = 0;
};
HlReport hl_ratio(const Space& space, double r_exponent, int trials,
                  std::uint64_t seed);

enum class SpaceKind {
    uniform_grid_1d,
    uniform_grid_2d,
    gaussian_plane,
    strip_removed_plane,
    random_cloud,
};

SpaceKind space_kind_from_string(const std::string& name);
std::string to_string(SpaceKind kind);

struct SpaceParams {
    int n = 16;            // point count (uniform_grid_1d, random_cloud)
    int nx = 9;            // grid columns (2-d kinds; strip uses nx per block)
    int ny = 9;            // grid rows
    double spacing = 1.0;  // lattice spacing (gaussian_plane defaults to 2)
    double gap = 10.0;     // strip width removed between the two blocks
    std::uint64_t seed = 1;
};

/// Deterministic built-in space zoo. gaussian_plane carries weights
/// exp(-|p|^2) on a lattice anchored at the origin corner (non-doubling at
/// the tested scales); strip_removed_plane is two unit-weight blocks whose
/// facing columns sit `gap` apart (doubling, but NI fails just past the gap).
Space generate_space(SpaceKind kind, const SpaceParams& params);

struct AuditConfig {
    std::vector<double> radii;              // empty: dyadic defaults
    std::vector<std::pair<double, double>> ni_pairs = {{1.0, 1.0}};
    std::vector<double> hl_exponents = {2.0};
    int hl_trials = 8;
    std::uint64_t seed = 1;
};

struct GeometryAudit {
    DoublingReport doubling;
    std::vector<std::pair<std::pair<double, double>, NiReport>> ni;
    std::vector<std::pair<double, HlReport>> hl;
    std::vector<double> radii;
    std::uint64_t seed = 1;
};

/// Dyadic radius ladder minpd/2 * 2^k, stopping once 2r would exceed the
/// diameter (doubling ratios saturate past that point).
std::vector<double> default_audit_radii(const Space& space);

GeometryAudit audit_space(const Space& space, const AuditConfig& config);

} // namespace tentspace

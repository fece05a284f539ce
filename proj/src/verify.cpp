#include "tentspace/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "tentspace/functionals.hpp"
#include "tentspace/halfspace.hpp"
#include "tentspace/operators.hpp"
#include "tentspace/rng.hpp"

namespace tentspace {

namespace {

constexpr double kIdentityTol = 1e-12;
constexpr double kSlack = 1e-12; // relative slack granted to exact inequalities
constexpr double kTiny = 1e-300;

double rel_diff(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), kTiny});
    return std::abs(a - b) / scale;
}

// How far lhs exceeds rhs, relative; zero when lhs <= rhs.
double rel_excess(double lhs, double rhs) {
    const double scale = std::max({std::abs(lhs), std::abs(rhs), kTiny});
    return std::max(0.0, (lhs - rhs) / scale);
}

Rng check_rng(const std::string& name, const CheckConfig& cfg) {
    return Rng(cfg.seed ^ stable_hash(name));
}

std::string describe_grid(const TimeGrid& grid) {
    std::ostringstream ss;
    ss << "tmin=" << grid.t_min() << ",sigma=" << grid.sigma()
       << ",slabs=" << grid.slabs();
    return ss.str();
}

HalfSpaceFunction random_function(const TimeGrid& grid, const Space& space, Rng& rng,
                                  double lo, double hi) {
    return HalfSpaceFunction::random(grid.slabs(), space.size(), rng, lo, hi);
}

RegionMask random_mask(const TimeGrid& grid, const Space& space, Rng& rng,
                       double density) {
    RegionMask mask(grid.slabs(), space.size());
    for (int j = 0; j < grid.slabs(); ++j)
        for (int i = 0; i < space.size(); ++i)
            if (rng.coin(density)) mask.set(j, i);
    return mask;
}

RegionMask nonempty_random_mask(const TimeGrid& grid, const Space& space, Rng& rng,
                                double density) {
    RegionMask mask = random_mask(grid, space, rng, density);
    if (!mask.any())
        mask.set(static_cast<int>(rng.below(static_cast<std::size_t>(grid.slabs()))),
                 static_cast<int>(rng.below(static_cast<std::size_t>(space.size()))));
    return mask;
}

PointSet random_subset(const Space& space, Rng& rng, double density) {
    PointSet s(space.size());
    for (int i = 0; i < space.size(); ++i)
        if (rng.coin(density)) s.add(i);
    return s;
}

std::vector<PointSet> all_subsets(const Space& space) {
    const int n = space.size();
    std::vector<PointSet> out;
    out.reserve(static_cast<std::size_t>(1) << n);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        PointSet s(n);
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) s.add(i);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<PointSet> subset_family(const Space& space, Rng& rng, int samples) {
    if (space.size() <= 10) return all_subsets(space);
    std::vector<PointSet> out;
    out.push_back(PointSet(space.size()));
    out.push_back(PointSet(space.size(), true));
    for (int t = 0; t < samples; ++t) out.push_back(random_subset(space, rng, 0.5));
    return out;
}

// Premise for the discrete tent-inclusion argument: every point of the set
// needs a witness cell in the bottom slab, so its distance to the complement
// must clear alpha times the smallest represented time.
bool tent_premise(const Space& space, const TimeGrid& grid, const PointSet& a,
                  double alpha) {
    const PointSet outside = a.complement();
    for (int i = 0; i < space.size(); ++i)
        if (a.contains(i) && !(space.dist_to_set(i, outside) > alpha * grid.tau(0)))
            return false;
    return true;
}

// V(c, (2a+1) r) / V(c, r), maximized over a ball family: the doubling-chain
// constant the stopping-time machinery calibrates against.
double doubling_chain_constant(const Space& space, std::span<const Ball> balls,
                               double alpha) {
    double worst = 1.0;
    for (const Ball& b : balls)
        worst = std::max(worst, space.volume(b.center, (2.0 * alpha + 1.0) * b.radius) /
                                    space.volume(b.center, b.radius));
    return worst;
}

struct CheckBody {
    CheckResult result;
    const Space& space;
    const TimeGrid& grid;
    const CheckConfig& cfg;

    void fail_if_positive(double defect, double tolerance) {
        result.measured_defect = defect;
        result.tolerance = tolerance;
        result.pass = defect <= tolerance;
    }
    void skip(const std::string& reason) {
        result.skipped = true;
        result.pass = false;
        result.skip_reason = reason;
    }
};

// ---------------------------------------------------------------------------
// identity checks
// ---------------------------------------------------------------------------

void check_avgtrick(CheckBody& c) {
    Rng rng = check_rng(c.result.name, c.cfg);
    const Space& sp = c.space;
    const TimeGrid& gr = c.grid;
    const double alpha = c.cfg.alpha;
    const int n = sp.size();

    HalfSpaceFunction vols(gr.slabs(), n);
    for (int j = 0; j < gr.slabs(); ++j)
        for (int i = 0; i < n; ++i) vols.at(j, i) = sp.volume(i, alpha * gr.tau(j));

    double defect = 0.0;
    for (int t = 0; t < c.cfg.trials; ++t) {
        const HalfSpaceFunction phi = random_function(gr, sp, rng, 0.0, 1.0);
        double lhs = 0.0;
        for (int x = 0; x < n; ++x) {
            double cone = 0.0;
            for (int j = 0; j < gr.slabs(); ++j) {
                const double reach = alpha * gr.tau(j);
                for (int i = 0; i < n; ++i)
                    if (sp.dist(x, i) < reach)
                        cone += phi.at(j, i) * sp.weight(i) / vols.at(j, i);
            }
            lhs += cone * sp.weight(x);
        }
        lhs *= gr.log_weight();
        defect = std::max(defect, rel_diff(lhs, integrate(sp, gr, phi)));
    }
    c.fail_if_positive(defect, kIdentityTol);
}

void check_lp_coincidence(CheckBody& c) {
    Rng rng = check_rng(c.result.name, c.cfg);
    const double p = c.cfg.p;
    double defect = 0.0;
    for (int t = 0; t < c.cfg.trials; ++t) {
        const HalfSpaceFunction f = random_function(c.grid, c.space, rng, -1.0, 1.0);
        HalfSpaceFunction fp(c.grid.slabs(), c.space.size());
        for (int j = 0; j < c.grid.slabs(); ++j)
            for (int i = 0; i < c.space.size(); ++i)
                fp.at(j, i) = std::pow(std::abs(f.at(j, i)), p);
        const double lhs = tent_norm(c.space, c.grid, f, p, p, c.cfg.alpha);
        const double rhs = std::pow(integrate(c.space, c.grid, fp), 1.0 / p);
        defect = std::max(defect, rel_diff(lhs, rhs));
    }
    c.fail_if_positive(defect, kIdentityTol);
}

void check_support_rule(CheckBody& c) {
    Rng rng = check_rng(c.result.name, c.cfg);
    double defect = 0.0;
    for (int t = 0; t < std::min(c.cfg.trials, 50); ++t) {
        const RegionMask region = nonempty_random_mask(c.grid, c.space, rng, 0.25);
        HalfSpaceFunction f = random_function(c.grid, c.space, rng, -1.0, 1.0);
        for (int j = 0; j < c.grid.slabs(); ++j)
            for (int i = 0; i < c.space.size(); ++i)
                if (!region.test(j, i)) f.at(j, i) = 0.0;
        const auto a = lusin_a(c.space, c.grid, f, c.cfg.q, c.cfg.alpha);
        const PointSet s = shadow(c.space, c.grid, region, c.cfg.alpha);
        for (int x = 0; x < c.space.size(); ++x)
            if (!s.contains(x)) defect = std::max(defect, std::abs(a[static_cast<std::size_t>(x)]));
    }
    c.fail_if_positive(defect, 0.0);
}

void check_pi_t_identity(CheckBody& c) {
    Rng rng = check_rng(c.result.name, c.cfg);
    double defect = 0.0;
    for (int t = 0; t < std::min(c.cfg.trials, 25); ++t) {
        const HalfSpaceFunction f = random_function(c.grid, c.space, rng, -1.0, 1.0);
        const HalfSpaceFunction back = project(
            c.space, c.grid, embed(c.space, c.grid, f, c.cfg.alpha), c.cfg.alpha,
            VolumeScale::aperture);
        double worst = 0.0, scale = kTiny;
        for (int j = 0; j < c.grid.slabs(); ++j)
            for (int i = 0; i < c.space.size(); ++i) {
                worst = std::max(worst, std::abs(back.at(j, i) - f.at(j, i)));
                scale = std::max(scale, std::abs(f.at(j, i)));
            }
        defect = std::max(defect, worst / scale);
    }
    c.fail_if_positive(defect, kIdentityTol);
}

void check_pt_identity(CheckBody& c) {
    Rng rng = check_rng(c.result.name, c.cfg);
    double defect = 0.0;
    for (int t = 0; t < std::min(c.cfg.trials, 10); ++t) {
        const HalfSpaceFunction f = random_function(c.grid, c.space, rng, -1.0, 1.0);
        double scale = kTiny;
        for (int j = 0; j < c.grid.slabs(); ++j)
            for (int i = 0; i < c.space.size(); ++i)
                scale = std::max(scale, std::abs(f.at(j, i)));
        defect = std::max(defect, aperture_identity_defect(c.space, c.grid, f,
                                                           c.cfg.alpha, c.cfg.beta) /
                                      scale);
    }
    c.fail_if_positive(defect, kIdentityTol);
}

void check_density_identity(CheckBody& c) {
    Rng rng = check_rng(c.result.name, c.cfg);
    const double gammas[3] = {0.25, c.cfg.gamma, 0.75};
    int mismatches = 0;
    int tested = 0;
    for (const PointSet& o : subset_family(c.space, rng, c.cfg.trials)) {
        for (double gamma : gammas) {
            if (!(gamma > 0.0 && gamma < 1.0)) continue;
            const DensitySets ds = gamma_density_set(c.space, o, gamma);
            std::vector<double> ind(static_cast<std::size_t>(c.space.size()), 0.0);
            for (int i = 0; i < c.space.size(); ++i)
                if (o.contains(i)) ind[static_cast<std::size_t>(i)] = 1.0;
            const auto m = maximal(c.space, ind);
            for (int x = 0; x < c.space.size(); ++x) {
                const bool via_maximal = m[static_cast<std::size_t>(x)] > 1.0 - gamma;
                if (via_maximal != ds.o_star.contains(x)) ++mismatches;
            }
            ++tested;
        }
    }
    c.result.constants["sets_tested"] = tested;
    c.fail_if_positive(mismatches, 0.0);
}

// ---------------------------------------------------------------------------
// inequality checks
// ---------------------------------------------------------------------------

void check_cptest_bounds(CheckBody& c) {
    Rng rng = check_rng(c.result.name, c.cfg);
    int violations = 0;
    double c_left = 0.0, c_right = 0.0;
    const RegionMask k_region = nonempty_random_mask(c.grid, c.space, rng, 0.3);
    for (int t = 0; t < std::min(c.cfg.trials, 40); ++t) {
        const HalfSpaceFunction f = random_function(c.grid, c.space, rng, -1.0, 1.0);
        HalfSpaceFunction cut = f;
        HalfSpaceFunction fq(c.grid.slabs(), c.space.size());
        for (int j = 0; j < c.grid.slabs(); ++j)
            for (int i = 0; i < c.space.size(); ++i) {
                if (!k_region.test(j, i)) cut.at(j, i) = 0.0;
                fq.at(j, i) = std::pow(std::abs(f.at(j, i)), c.cfg.q);
            }
        const double mid =
            std::pow(integrate(c.space, c.grid, fq, &k_region), 1.0 / c.cfg.q);
        const double left =
            lp_norm(c.space, lusin_a(c.space, c.grid, cut, c.cfg.q, c.cfg.alpha), c.cfg.p);
        const double right =
            lp_norm(c.space, lusin_a(c.space, c.grid, f, c.cfg.q, c.cfg.alpha), c.cfg.p);
        if (mid > 0.0) {
            if (!(right > 0.0)) ++violations;
            else c_right = std::max(c_right, mid / right);
            c_left = std::max(c_left, left / mid);
        }
    }
    c.result.constants["left_constant"] = c_left;
    c.result.constants["right_constant"] = c_right;
    c.fail_if_positive(violations, 0.0);
}

void check_integration_lemma(CheckBody& c) {
    Rng rng = check_rng(c.result.name, c.cfg);
    const Space& sp = c.space;
    const TimeGrid& gr = c.grid;
    const double alpha = c.cfg.alpha;
    const int n = sp.size();

    HalfSpaceFunction vols(gr.slabs(), n);
    for (int j = 0; j < gr.slabs(); ++j)
        for (int i = 0; i < n; ++i) vols.at(j, i) = sp.volume(i, alpha * gr.tau(j));

    const auto subsets = subset_family(sp, rng, 60);
    double defect = 0.0;
    for (int t = 0; t < std::min(c.cfg.trials, 20); ++t) {
        const HalfSpaceFunction phi = random_function(gr, sp, rng, 0.0, 1.0);
        for (const PointSet& f_set : subsets) {
            // left side summed vertex-major, right side cell-major
            double lhs = 0.0;
            for (int x = 0; x < n; ++x) {
                if (!f_set.contains(x)) continue;
                double cone = 0.0;
                for (int j = 0; j < gr.slabs(); ++j) {
                    const double reach = alpha * gr.tau(j);
                    for (int i = 0; i < n; ++i)
                        if (sp.dist(x, i) < reach)
                            cone += phi.at(j, i) * sp.weight(i) * gr.dt_weight(j);
                }
                lhs += cone * sp.weight(x);
            }
            double rhs = 0.0;
            for (int j = 0; j < gr.slabs(); ++j) {
                const double reach = alpha * gr.tau(j);
                for (int i = 0; i < n; ++i) {
                    bool in_cone_union = false;
                    for (int x = 0; x < n && !in_cone_union; ++x)
                        if (f_set.contains(x) && sp.dist(x, i) < reach) in_cone_union = true;
                    if (in_cone_union)
                        rhs += phi.at(j, i) * vols.at(j, i) * sp.weight(i) * gr.dt_weight(j);
                }
            }
            if (f_set.count() == n) defect = std::max(defect, rel_diff(lhs, rhs));
            else defect = std::max(defect, rel_excess(lhs, rhs));
        }
    }
    c.fail_if_positive(defect, kIdentityTol);
}

void check_duality_holder(CheckBody& c) {
    if (!(c.cfg.p > 1.0) || !(c.cfg.q > 1.0)) {
        c.skip("requires p and q in (1,infinity)");
        return;
    }
    Rng rng = check_rng(c.result.name, c.cfg);
    const double p = c.cfg.p, q = c.cfg.q;
    const double pc = p / (p - 1.0), qc = q / (q - 1.0);
    double defect = 0.0;
    for (int t = 0; t < c.cfg.trials; ++t) {
        const HalfSpaceFunction f = random_function(c.grid, c.space, rng, -1.0, 1.0);
        const HalfSpaceFunction g = random_function(c.grid, c.space, rng, -1.0, 1.0);
        const double lhs = std::abs(pairing(c.space, c.grid, f, g));
        const auto af = lusin_a(c.space, c.grid, f, q, c.cfg.alpha);
        const auto ag = lusin_a(c.space, c.grid, g, qc, c.cfg.alpha);
        double mid = 0.0;
        for (int x = 0; x < c.space.size(); ++x)
            mid += af[static_cast<std::size_t>(x)] * ag[static_cast<std::size_t>(x)] *
                   c.space.weight(x);
        const double rhs = tent_norm(c.space, c.grid, f, p, q, c.cfg.alpha) *
                           tent_norm(c.space, c.grid, g, pc, qc, c.cfg.alpha);
        defect = std::max(defect, std::max(rel_excess(lhs, mid), rel_excess(mid, rhs)));
    }
    // the dual-side mechanism: integrating the conjugate Lusin power against a
    // test function equals the averaged-weight integral, exactly
    std::vector<double> psi(static_cast<std::size_t>(c.space.size()));
    for (auto& v : psi) v = rng.uniform();
    const HalfSpaceFunction g = random_function(c.grid, c.space, rng, -1.0, 1.0);
    const auto ag = lusin_a(c.space, c.grid, g, qc, c.cfg.alpha);
    double lhs_avg = 0.0;
    for (int x = 0; x < c.space.size(); ++x)
        lhs_avg += std::pow(ag[static_cast<std::size_t>(x)], qc) *
                   psi[static_cast<std::size_t>(x)] * c.space.weight(x);
    double rhs_avg = 0.0;
    for (int j = 0; j < c.grid.slabs(); ++j) {
        const auto averaged =
            ball_average(c.space, psi, c.cfg.alpha * c.grid.tau(j));
        for (int i = 0; i < c.space.size(); ++i)
            rhs_avg += averaged[static_cast<std::size_t>(i)] *
                       std::pow(std::abs(g.at(j, i)), qc) * c.space.weight(i);
    }
    rhs_avg *= c.grid.log_weight();
    defect = std::max(defect, rel_diff(lhs_avg, rhs_avg));
    c.result.constants["averaging_dual_defect"] = rel_diff(lhs_avg, rhs_avg);
    c.fail_if_positive(defect, kSlack);
}

void check_c_le_maximal(CheckBody& c) {
    Rng rng = check_rng(c.result.name, c.cfg);
    const double q = c.cfg.q;
    double defect = 0.0;
    double norm_ratio = 0.0;
    for (int t = 0; t < std::min(c.cfg.trials, 40); ++t) {
        const HalfSpaceFunction f = random_function(c.grid, c.space, rng, -1.0, 1.0);
        const auto a = lusin_a(c.space, c.grid, f, q, c.cfg.alpha);
        std::vector<double> aq(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) aq[i] = std::pow(a[i], q);
        const auto ma = maximal(c.space, aq);
        const auto cc = carleson_c(c.space, c.grid, f, q, c.cfg.alpha);
        for (int x = 0; x < c.space.size(); ++x)
            defect = std::max(defect, rel_excess(std::pow(cc[static_cast<std::size_t>(x)], q),
                                                 ma[static_cast<std::size_t>(x)]));
        if (c.cfg.p > q) {
            const double num = lp_norm(c.space, cc, c.cfg.p);
            const double den = lp_norm(c.space, a, c.cfg.p);
            if (den > 0.0) norm_ratio = std::max(norm_ratio, num / den);
        }
    }
    if (c.cfg.p > q) {
        c.result.constants["norm_ratio"] = norm_ratio;
        c.result.constants["hl_bound"] = std::pow(
            hl_ratio(c.space, c.cfg.p / q, 4, c.cfg.seed).lower_bound, 1.0 / q);
    }
    c.fail_if_positive(defect, kSlack);
}

void check_logconvexity(CheckBody& c) {
    Rng rng = check_rng(c.result.name, c.cfg);
    const double p0 = 1.5, q0 = 3.0, p1 = 4.0, q1 = 1.5;
    const double thetas[3] = {0.25, 0.5, 0.75};
    double defect = 0.0;
    for (int t = 0; t < c.cfg.trials; ++t) {
        const HalfSpaceFunction f = random_function(c.grid, c.space, rng, -1.0, 1.0);
        const double n0 = tent_norm(c.space, c.grid, f, p0, q0, c.cfg.alpha);
        const double n1 = tent_norm(c.space, c.grid, f, p1, q1, c.cfg.alpha);
        for (double theta : thetas) {
            const double p = 1.0 / ((1.0 - theta) / p0 + theta / p1);
            const double q = 1.0 / ((1.0 - theta) / q0 + theta / q1);
            const double nt = tent_norm(c.space, c.grid, f, p, q, c.cfg.alpha);
            defect = std::max(
                defect, rel_excess(nt, std::pow(n0, 1.0 - theta) * std::pow(n1, theta)));
        }
    }
    c.fail_if_positive(defect, 1e-9);
}

void check_aperture_equiv(CheckBody& c) {
    const RatioStats stats =
        aperture_ratio(c.space, c.grid, c.cfg.p, c.cfg.q, c.cfg.alpha, c.cfg.beta,
                       std::min(c.cfg.trials, 20), c.cfg.seed);
    c.result.constants["max_ratio"] = stats.max_ratio;
    c.result.constants["median_ratio"] = stats.median_ratio;
    c.result.constants["volume_ratio_bound"] = stats.predicted_bound;
    // kernel-variant spread on the same family, recorded alongside
    const RatioStats variants = variant_ratio(c.space, c.grid, c.cfg.p, c.cfg.q,
                                              c.cfg.alpha, std::min(c.cfg.trials, 10),
                                              c.cfg.seed);
    c.result.constants["variant_max_ratio"] = variants.max_ratio;
    c.result.constants["variant_median_ratio"] = variants.median_ratio;
    const bool finite =
        std::isfinite(stats.max_ratio) && std::isfinite(variants.max_ratio);
    c.fail_if_positive(finite ? 0.0 : 1.0, 0.0);
}

void check_infty_est(CheckBody& c) {
    Rng rng = check_rng(c.result.name, c.cfg);
    const double q = c.cfg.q;
    double defect = 0.0;
    int no_cover = 0;
    for (int k = 0; k < 5; ++k) {
        const RegionMask k_region = nonempty_random_mask(c.grid, c.space, rng, 0.15);
        const BetaConstants betas =
            beta_constants(c.space, c.grid, k_region, c.cfg.alpha);
        c.result.constants["beta0"] = betas.beta0;
        if (betas.beta1) c.result.constants["beta1"] = *betas.beta1;
        for (int t = 0; t < std::min(c.cfg.trials, 20); ++t) {
            const HalfSpaceFunction f = random_function(c.grid, c.space, rng, -1.0, 1.0);
            HalfSpaceFunction fq(c.grid.slabs(), c.space.size());
            HalfSpaceFunction cut = f;
            for (int j = 0; j < c.grid.slabs(); ++j)
                for (int i = 0; i < c.space.size(); ++i) {
                    fq.at(j, i) = std::pow(std::abs(f.at(j, i)), q);
                    if (!k_region.test(j, i)) cut.at(j, i) = 0.0;
                }
            const double on_k =
                std::pow(integrate(c.space, c.grid, fq, &k_region), 1.0 / q);
            const double inf_norm = tent_norm(
                c.space, c.grid, f, std::numeric_limits<double>::infinity(), q, c.cfg.alpha);
            if (betas.beta1)
                defect = std::max(
                    defect, rel_excess(on_k, std::pow(*betas.beta1, 1.0 / q) * inf_norm));
            else ++no_cover;
            const double cut_norm = tent_norm(
                c.space, c.grid, cut, std::numeric_limits<double>::infinity(), q, c.cfg.alpha);
            defect = std::max(
                defect, rel_excess(cut_norm, on_k / std::pow(betas.beta0, 1.0 / q)));
        }
    }
    c.result.constants["no_covering_ball"] = no_cover;
    c.fail_if_positive(defect, kSlack);
}

// ---------------------------------------------------------------------------
// stopping-time checks
// ---------------------------------------------------------------------------

void check_stopfun_density(CheckBody& c) {
    Rng rng = check_rng(c.result.name, c.cfg);
    const double q = std::max(c.cfg.q, 1.0);
    const double alpha = c.cfg.alpha;
    const auto balls = enumerate_distinct_balls(c.space);
    const double chain = doubling_chain_constant(c.space, balls, alpha);
    const double big_m = c.cfg.big_m > 0.0 ? c.cfg.big_m : 2.0 * std::pow(chain, 1.0 / q);
    const double factor = 1.0 - chain / std::pow(big_m, q);
    c.result.constants["C_X_alpha"] = chain;
    c.result.constants["M"] = big_m;
    c.result.constants["density_factor"] = factor;
    if (!(factor > 0.0)) {
        c.skip("M is too small for the measured doubling-chain constant");
        return;
    }
    double defect = 0.0;
    for (int t = 0; t < std::min(c.cfg.trials, 20); ++t) {
        const HalfSpaceFunction g = random_function(c.grid, c.space, rng, -1.0, 1.0);
        const auto heights = stopping_height(c.space, c.grid, g, q, big_m, alpha);
        std::vector<int> admitted(heights.size());
        for (std::size_t x = 0; x < heights.size(); ++x)
            admitted[x] = c.grid.truncation_count(heights[x]);
        for (const Ball& b : balls) {
            // heights compare through the slabs they admit; the truncated
            // Lusin value is constant between consecutive representatives
            const int needed = c.grid.truncation_count(b.radius);
            double mass = 0.0, good = 0.0;
            for (int x = 0; x < c.space.size(); ++x) {
                if (!(c.space.dist(b.center, x) < b.radius)) continue;
                mass += c.space.weight(x);
                if (admitted[static_cast<std::size_t>(x)] >= needed)
                    good += c.space.weight(x);
            }
            defect = std::max(defect, (factor * mass - good) / mass);
        }
    }
    c.fail_if_positive(defect, kSlack);
}

void check_stopfun_corollary(CheckBody& c) {
    Rng rng = check_rng(c.result.name, c.cfg);
    const double q = std::max(c.cfg.q, 1.0);
    const double alpha = c.cfg.alpha;
    const int n = c.space.size();

    // doubling-chain constant over the cell balls B(y_i, alpha tau_j)
    double chain = 1.0;
    HalfSpaceFunction vols(c.grid.slabs(), n);
    for (int j = 0; j < c.grid.slabs(); ++j)
        for (int i = 0; i < n; ++i) {
            const double r = alpha * c.grid.tau(j);
            vols.at(j, i) = c.space.volume(i, r);
            chain = std::max(chain, c.space.volume(i, (2.0 * alpha + 1.0) * r) / vols.at(j, i));
        }
    const double big_m = c.cfg.big_m > 0.0 ? c.cfg.big_m : 2.0 * std::pow(chain, 1.0 / q);
    const double factor = 1.0 - chain / std::pow(big_m, q);
    c.result.constants["C_cells"] = chain;
    c.result.constants["M"] = big_m;
    if (!(factor > 0.0)) {
        c.skip("M is too small for the measured doubling-chain constant");
        return;
    }
    const double k_prime = 1.0 / factor;
    c.result.constants["K_prime"] = k_prime;

    std::vector<int> needed(static_cast<std::size_t>(c.grid.slabs()));
    for (int j = 0; j < c.grid.slabs(); ++j)
        needed[static_cast<std::size_t>(j)] = c.grid.truncation_count(alpha * c.grid.tau(j));

    double defect = 0.0;
    for (int gt = 0; gt < 3; ++gt) {
        const HalfSpaceFunction g = random_function(c.grid, c.space, rng, -1.0, 1.0);
        const auto heights = stopping_height(c.space, c.grid, g, q, big_m, alpha);
        std::vector<int> admitted(heights.size());
        for (std::size_t x = 0; x < heights.size(); ++x)
            admitted[x] = c.grid.truncation_count(heights[x]);
        for (int pt = 0; pt < 5; ++pt) {
            const HalfSpaceFunction phi = random_function(c.grid, c.space, rng, 0.0, 1.0);
            double lhs = 0.0;
            for (int j = 0; j < c.grid.slabs(); ++j)
                for (int i = 0; i < n; ++i)
                    lhs += phi.at(j, i) * vols.at(j, i) * c.space.weight(i) *
                           c.grid.dt_weight(j);
            double rhs = 0.0;
            for (int x = 0; x < n; ++x) {
                double cone = 0.0;
                for (int j = 0; j < c.grid.slabs(); ++j) {
                    if (admitted[static_cast<std::size_t>(x)] < needed[static_cast<std::size_t>(j)])
                        continue;
                    const double reach = alpha * c.grid.tau(j);
                    for (int i = 0; i < n; ++i)
                        if (c.space.dist(x, i) < reach)
                            cone += phi.at(j, i) * c.space.weight(i) * c.grid.dt_weight(j);
                }
                rhs += cone * c.space.weight(x);
            }
            defect = std::max(defect, rel_excess(lhs, k_prime * rhs));
        }
    }
    c.fail_if_positive(defect, kSlack);
}

// ---------------------------------------------------------------------------
// set-geometry checks
// ---------------------------------------------------------------------------

void check_tent_inclusion(CheckBody& c) {
    Rng rng = check_rng(c.result.name, c.cfg);
    const double alpha = c.cfg.alpha;
    int violations = 0, checked = 0, premise_failures = 0;

    std::vector<std::pair<PointSet, PointSet>> pairs;
    if (c.space.size() <= 4) {
        const auto subsets = all_subsets(c.space);
        for (const auto& a : subsets)
            for (const auto& b : subsets) pairs.emplace_back(a, b);
    } else {
        for (int t = 0; t < 1000; ++t)
            pairs.emplace_back(random_subset(c.space, rng, 0.5),
                               random_subset(c.space, rng, 0.5));
    }
    int informative = 0; // proper nonempty sets that clear the premise
    for (const auto& [a, b] : pairs) {
        if (!tent_premise(c.space, c.grid, a, alpha)) {
            ++premise_failures;
            continue;
        }
        if (!a.empty() && a.count() < c.space.size()) ++informative;
        const RegionMask ta = tent_mask(c.space, c.grid, a, alpha);
        const RegionMask tb = tent_mask(c.space, c.grid, b, alpha);
        if (!tb.contains(ta)) continue;
        ++checked;
        if (!a.is_subset_of(b)) ++violations;
    }
    c.result.constants["pairs_checked"] = checked;
    c.result.constants["premise_failures"] = premise_failures;
    if (informative == 0) {
        c.skip("t_min condition: no proper subset satisfies the bottom-slab premise");
        return;
    }
    c.fail_if_positive(violations, 0.0);
}

void check_shadow_bounded(CheckBody& c) {
    Rng rng = check_rng(c.result.name, c.cfg);
    const double alpha = c.cfg.alpha;
    const double top = alpha * c.grid.tau(c.grid.slabs() - 1);
    int violations = 0;
    for (int t = 0; t < std::min(c.cfg.trials, 30); ++t) {
        const RegionMask region = nonempty_random_mask(c.grid, c.space, rng, 0.1);
        const PointSet s = shadow(c.space, c.grid, region, alpha);
        std::vector<int> columns;
        for (int i = 0; i < c.space.size(); ++i)
            for (int j = 0; j < c.grid.slabs(); ++j)
                if (region.test(j, i)) {
                    columns.push_back(i);
                    break;
                }
        for (int x = 0; x < c.space.size(); ++x) {
            double radius = 0.0;
            for (int i : columns) radius = std::max(radius, c.space.dist(x, i));
            radius = radius * (1.0 + kSlack) + kTiny; // open ball containing the columns
            for (int z = 0; z < c.space.size(); ++z)
                if (s.contains(z) &&
                    c.space.dist(z, x) > (radius + top) * (1.0 + kSlack))
                    ++violations;
        }
    }
    c.fail_if_positive(violations, 0.0);
}

void check_minimal_tent(CheckBody& c) {
    Rng rng = check_rng(c.result.name, c.cfg);
    const double alpha = c.cfg.alpha;
    int violations = 0, ties = 0;

    std::vector<RegionMask> regions;
    regions.emplace_back(c.grid.slabs(), c.space.size());        // empty
    regions.emplace_back(c.grid.slabs(), c.space.size(), true);  // full
    const int cells = c.grid.slabs() * c.space.size();
    if (cells <= 512) {
        for (int j = 0; j < c.grid.slabs(); ++j)
            for (int i = 0; i < c.space.size(); ++i) {
                RegionMask m(c.grid.slabs(), c.space.size());
                m.set(j, i);
                regions.push_back(std::move(m));
            }
    }
    for (int t = 0; t < c.cfg.trials; ++t)
        regions.push_back(random_mask(c.grid, c.space, rng, 0.1));

    const auto tents = subset_family(c.space, rng, 50);
    for (const RegionMask& region : regions) {
        const PointSet s = shadow(c.space, c.grid, region, alpha);
        const RegionMask mt = tent_mask(c.space, c.grid, s, alpha);
        // containment: a cell of the region can sit on the tent boundary only
        // through an exact distance tie, which the identity excludes
        const PointSet outside = s.complement();
        for (int j = 0; j < c.grid.slabs(); ++j)
            for (int i = 0; i < c.space.size(); ++i) {
                if (!region.test(j, i) || mt.test(j, i)) continue;
                if (c.space.dist_to_set(i, outside) == alpha * c.grid.tau(j)) ++ties;
                else ++violations;
            }
        // minimality against every tent containing the region
        for (const PointSet& cover : tents) {
            const RegionMask tc = tent_mask(c.space, c.grid, cover, alpha);
            if (!tc.contains(region)) continue;
            if (!tc.contains(mt)) ++violations;
        }
    }
    c.result.constants["boundary_ties"] = ties;
    c.fail_if_positive(violations, 0.0);
}

void check_betas_positive(CheckBody& c) {
    Rng rng = check_rng(c.result.name, c.cfg);
    const double alpha = c.cfg.alpha;
    int violations = 0, no_cover = 0, premise_skips = 0;
    for (int t = 0; t < std::min(c.cfg.trials, 25); ++t) {
        const RegionMask k_region = nonempty_random_mask(c.grid, c.space, rng, 0.05);
        const BetaConstants betas = beta_constants(c.space, c.grid, k_region, alpha);
        if (!(betas.beta0 > 0.0)) ++violations;
        c.result.constants["beta0"] = betas.beta0;
        if (!betas.beta1) {
            ++no_cover;
            continue;
        }
        c.result.constants["beta1"] = *betas.beta1;
        if (!(*betas.beta1 > 0.0)) ++violations;
        if (*betas.beta1 < betas.beta0) ++violations;
        const PointSet s = shadow(c.space, c.grid, k_region, alpha);
        if (!tent_premise(c.space, c.grid, s, alpha)) {
            ++premise_skips;
            continue;
        }
        if (*betas.beta1 < c.space.set_mass(s) * (1.0 - kSlack)) ++violations;
    }
    c.result.constants["no_covering_ball"] = no_cover;
    c.result.constants["premise_skips"] = premise_skips;
    c.fail_if_positive(violations, 0.0);
}

void check_trunccone_tent(CheckBody& c) {
    Rng rng = check_rng(c.result.name, c.cfg);
    const double alpha = c.cfg.alpha;
    auto balls = enumerate_distinct_balls(c.space);
    if (balls.size() > 600) {
        std::vector<Ball> sample;
        for (int t = 0; t < 200; ++t) sample.push_back(balls[rng.below(balls.size())]);
        balls = std::move(sample);
    }
    int violations = 0;
    for (const Ball& b : balls) {
        const PointSet widened = c.space.ball_set(b.center, (2.0 * alpha + 1.0) * b.radius);
        const RegionMask tent = tent_mask(c.space, c.grid, widened, alpha);
        for (int x = 0; x < c.space.size(); ++x) {
            if (!(c.space.dist(b.center, x) < b.radius)) continue;
            const RegionMask cone =
                cone_mask(c.space, c.grid, x, alpha, b.radius);
            if (!tent.contains(cone)) ++violations;
        }
    }
    c.fail_if_positive(violations, 0.0);
}

// ---------------------------------------------------------------------------
// geometry-assumption audits
// ---------------------------------------------------------------------------

void check_doubling_audit(CheckBody& c) {
    const auto radii = default_audit_radii(c.space);
    const DoublingReport report = doubling_constant(c.space, radii);
    double defect = 0.0;
    for (auto [r, v] : report.per_radius) {
        std::ostringstream key;
        key << "ratio[" << r << "]";
        c.result.constants[key.str()] = v;
        defect = std::max(defect, std::max(0.0, 1.0 - v));
    }
    c.result.constants["doubling_constant"] = report.constant;
    c.result.constants["unbounded_at_tested_scales"] =
        report.strictly_increasing ? 1.0 : 0.0;
    c.fail_if_positive(defect, 0.0);
}

void check_ni_audit(CheckBody& c) {
    const auto radii = default_audit_radii(c.space);
    double defect = 0.0;
    const std::pair<double, double> pairs[2] = {{c.cfg.alpha, c.cfg.alpha},
                                                {c.cfg.alpha, c.cfg.beta}};
    for (auto [a, b] : pairs) {
        const NiReport report = ni_constant(c.space, a, b, radii);
        std::ostringstream key;
        key << "ni[" << a << "," << b << "]";
        c.result.constants[key.str()] = report.value;
        defect = std::max(defect, std::max(0.0, -report.value));
        defect = std::max(defect, std::max(0.0, report.value - 1.0));
    }
    c.fail_if_positive(defect, kSlack);
}

void check_hl_audit(CheckBody& c) {
    const double exponent = c.cfg.p > 1.0 ? c.cfg.p : 2.0;
    const HlReport report = hl_ratio(c.space, exponent, 8, c.cfg.seed);
    c.result.constants["hl_lower_bound"] = report.lower_bound;
    c.result.constants["exponent"] = exponent;
    c.fail_if_positive(report.lower_bound >= 0.0 ? 0.0 : 1.0, 0.0);
}

using CheckFn = void (*)(CheckBody&);

struct RegistryEntry {
    const char* name;
    CheckFn fn;
};

constexpr RegistryEntry kRegistry[] = {
    {"avgtrick", check_avgtrick},
    {"lp_coincidence", check_lp_coincidence},
    {"support_rule", check_support_rule},
    {"cptest_bounds", check_cptest_bounds},
    {"integration_lemma", check_integration_lemma},
    {"duality_holder", check_duality_holder},
    {"pi_t_identity", check_pi_t_identity},
    {"pt_identity", check_pt_identity},
    {"aperture_equiv", check_aperture_equiv},
    {"c_le_maximal", check_c_le_maximal},
    {"density_identity", check_density_identity},
    {"stopfun_density", check_stopfun_density},
    {"stopfun_corollary", check_stopfun_corollary},
    {"tent_inclusion", check_tent_inclusion},
    {"shadow_bounded", check_shadow_bounded},
    {"minimal_tent", check_minimal_tent},
    {"betas_positive", check_betas_positive},
    {"trunccone_tent", check_trunccone_tent},
    {"logconvexity", check_logconvexity},
    {"infty_est", check_infty_est},
    {"doubling_audit", check_doubling_audit},
    {"ni_audit", check_ni_audit},
    {"hl_audit", check_hl_audit},
};

} // namespace

std::vector<std::string> check_names() {
    std::vector<std::string> names;
    for (const auto& entry : kRegistry) names.emplace_back(entry.name);
    return names;
}

CheckResult run_check(const std::string& name, const Space& space, const TimeGrid& grid,
                      const CheckConfig& config, const std::string& space_name) {
    for (const auto& entry : kRegistry) {
        if (name != entry.name) continue;
        CheckBody body{CheckResult{}, space, grid, config};
        body.result.name = name;
        body.result.space = space_name;
        body.result.grid = describe_grid(grid);
        body.result.seed = config.seed;
        entry.fn(body);
        return body.result;
    }
    throw std::invalid_argument("unknown check '" + name + "'");
}

Suite suite_from_string(const std::string& name) {
    if (name == "identities") return Suite::identities;
    if (name == "inequalities") return Suite::inequalities;
    if (name == "set_geometry") return Suite::set_geometry;
    if (name == "assumptions") return Suite::assumptions;
    if (name == "all") return Suite::all;
    throw std::invalid_argument("unknown suite '" + name + "'");
}

std::string to_string(Suite suite) {
    switch (suite) {
        case Suite::identities: return "identities";
        case Suite::inequalities: return "inequalities";
        case Suite::set_geometry: return "set_geometry";
        case Suite::assumptions: return "assumptions";
        case Suite::all: return "all";
    }
    return "unknown";
}

std::vector<std::string> suite_checks(Suite suite) {
    switch (suite) {
        case Suite::identities:
            return {"avgtrick", "lp_coincidence", "support_rule",
                    "pi_t_identity", "pt_identity", "density_identity"};
        case Suite::inequalities:
            return {"duality_holder", "integration_lemma", "c_le_maximal",
                    "cptest_bounds", "infty_est", "logconvexity",
                    "stopfun_density", "stopfun_corollary", "aperture_equiv"};
        case Suite::set_geometry:
            return {"tent_inclusion", "shadow_bounded", "minimal_tent",
                    "betas_positive", "trunccone_tent"};
        case Suite::assumptions:
            return {"doubling_audit", "ni_audit", "hl_audit"};
        case Suite::all: {
            std::vector<std::string> names;
            for (Suite s : {Suite::identities, Suite::inequalities,
                            Suite::set_geometry, Suite::assumptions})
                for (auto& n : suite_checks(s)) names.push_back(std::move(n));
            return names;
        }
    }
    return {};
}

std::vector<NamedSpace> default_zoo() {
    std::vector<NamedSpace> zoo;
    SpaceParams one;
    one.n = 1;
    zoo.push_back({"point1", generate_space(SpaceKind::uniform_grid_1d, one)});
    zoo.push_back({"s3", Space::from_points({"a", "b", "c"}, {0.0, 1.0, 3.0}, 1,
                                            {1.0, 1.0, 1.0})});
    zoo.push_back({"line4", Space::from_points({}, {0.0, 1.0, 2.5, 5.5}, 1,
                                               {1.0, 0.5, 2.0, 1.25})});
    SpaceParams sixteen;
    sixteen.n = 16;
    zoo.push_back({"grid16", generate_space(SpaceKind::uniform_grid_1d, sixteen)});
    return zoo;
}

std::vector<CheckResult> run_suite(Suite suite, std::span<const NamedSpace> spaces,
                                   const CheckConfig& config) {
    if (spaces.empty()) throw std::invalid_argument("run_suite: no spaces given");
    std::vector<CheckResult> results;
    const auto names = suite_checks(suite);
    for (const NamedSpace& ns : spaces) {
        const TimeGrid grid =
            default_grid(ns.space, std::max({config.alpha, config.beta, 1.0}),
                         std::min({config.alpha, config.beta, 1.0}));
        for (const auto& name : names)
            results.push_back(run_check(name, ns.space, grid, config, ns.name));
    }
    std::stable_sort(results.begin(), results.end(),
                     [](const CheckResult& a, const CheckResult& b) {
                         return a.name < b.name;
                     });
    return results;
}

bool all_passed(std::span<const CheckResult> results) {
    for (const auto& r : results)
        if (!r.skipped && !r.pass) return false;
    return true;
}

nlohmann::json to_json(const CheckResult& result) {
    nlohmann::json j;
    j["name"] = result.name;
    j["space"] = result.space;
    j["grid"] = result.grid;
    j["seed"] = result.seed;
    j["measured_defect"] = result.measured_defect;
    j["tolerance"] = result.tolerance;
    j["constants"] = result.constants;
    j["pass"] = result.pass;
    j["skipped"] = result.skipped;
    if (result.skipped) j["skip_reason"] = result.skip_reason;
    return j;
}

nlohmann::json report_to_json(std::span<const CheckResult> results) {
    nlohmann::json arr = nlohmann::json::array();
    int failures = 0, skipped = 0;
    for (const auto& r : results) {
        arr.push_back(to_json(r));
        if (r.skipped) ++skipped;
        else if (!r.pass) ++failures;
    }
    nlohmann::json j;
    j["results"] = arr;
    j["failures"] = failures;
    j["skipped"] = skipped;
    return j;
}

std::string summary_table(std::span<const CheckResult> results) {
    std::ostringstream out;
    for (const auto& r : results) {
        const char* status = r.skipped ? "SKIP" : (r.pass ? "pass" : "FAIL");
        out << status << "  " << r.name << " [" << r.space << "]"
            << "  defect=" << r.measured_defect << " tol=" << r.tolerance;
        if (r.skipped) out << "  (" << r.skip_reason << ")";
        out << '\n';
    }
    return out.str();
}

} // namespace tentspace

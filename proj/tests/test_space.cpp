#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>

#include "support.hpp"
#include "tentspace/rng.hpp"

using namespace tentspace;

TEST_CASE("volume counts open-ball mass") {
    const Space s3 = make_s3();
    CHECK(s3.volume(0, 0.5) == 1.0);  // only a itself
    CHECK(s3.volume(0, 1.5) == 2.0);  // a, b
    CHECK(s3.volume(1, 2.5) == 3.0);  // d(b,a)=1, d(b,c)=2 both inside
    CHECK(s3.volume(2, 2.0) == 1.0);  // open: d(c,b)=2 excluded
    CHECK_THROWS_AS(s3.volume(0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(s3.volume(0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(s3.volume(7, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(s3.index_of("zz"), std::invalid_argument);
    CHECK(s3.index_of("b") == 1);
}

TEST_CASE("volume is monotone in the radius and dominates the point weight") {
    SpaceParams params;
    params.n = 12;
    params.seed = 3;
    const Space cloud = generate_space(SpaceKind::random_cloud, params);
    Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        const int x = static_cast<int>(rng.below(static_cast<std::size_t>(cloud.size())));
        const double r = rng.uniform(1e-3, 2.0);
        const double rp = r + rng.uniform(0.0, 1.0);
        CHECK(cloud.volume(x, r) <= cloud.volume(x, rp));
        CHECK(cloud.volume(x, r) >= cloud.weight(x));
    }
}

TEST_CASE("distinct ball enumeration realizes every member set once per center") {
    const Space s3 = make_s3();
    const auto balls = enumerate_distinct_balls(s3);
    CHECK(balls.size() == 9);

    std::vector<double> radii_a;
    for (const Ball& b : balls)
        if (b.center == 0) radii_a.push_back(b.radius);
    std::sort(radii_a.begin(), radii_a.end());
    CHECK(radii_a == std::vector<double>{0.5, 2.0, 4.0});
    CHECK(s3.ball_members(0, 0.5) == std::vector<int>{0});
    CHECK(s3.ball_members(0, 2.0) == std::vector<int>{0, 1});
    CHECK(s3.ball_members(0, 4.0) == std::vector<int>{0, 1, 2});

    const Space one = make_point1();
    CHECK(enumerate_distinct_balls(one).size() == 1);
}

TEST_CASE("every open ball matches an enumerated one") {
    SpaceParams params;
    params.n = 7;
    params.seed = 5;
    const Space cloud = generate_space(SpaceKind::random_cloud, params);
    const auto balls = enumerate_distinct_balls(cloud);
    for (int z = 0; z < cloud.size(); ++z) {
        std::vector<double> d;
        for (int i = 0; i < cloud.size(); ++i) d.push_back(cloud.dist(z, i));
        std::sort(d.begin(), d.end());
        d.erase(std::unique(d.begin(), d.end()), d.end());
        // probe at the breakpoints themselves, between them, and past the end
        std::vector<double> probes;
        for (std::size_t k = 1; k < d.size(); ++k) {
            probes.push_back(d[k]);
            probes.push_back(0.5 * (d[k - 1] + d[k]));
        }
        probes.push_back(d.back() + 2.0);
        for (double r : probes) {
            const auto members = cloud.ball_members(z, r);
            bool found = false;
            for (const Ball& b : balls)
                if (b.center == z && cloud.ball_members(z, b.radius) == members)
                    found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("doubling constant on the canonical spaces") {
    const double radii1[] = {0.6};
    const DoublingReport one = doubling_constant(make_point1(), {radii1, 1});
    CHECK(one.constant == 1.0);

    const DoublingReport s3 = doubling_constant(make_s3(), {radii1, 1});
    CHECK(s3.constant == 2.0);

    SpaceParams params;
    params.n = 64;
    const Space grid64 = generate_space(SpaceKind::uniform_grid_1d, params);
    const double dyadic[] = {0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
    CHECK(doubling_constant(grid64, {dyadic, 6}).constant <= 3.0);

    CHECK_THROWS_AS(doubling_constant(make_s3(), {}), std::invalid_argument);
}

TEST_CASE("nice-intersections constant") {
    const double r1[] = {1.0};
    CHECK(ni_constant(make_point1(), 1.0, 1.0, {r1, 1}).value == 1.0);

    SpaceParams params;
    params.n = 10;
    params.seed = 2;
    const Space cloud = generate_space(SpaceKind::random_cloud, params);
    const double radii[] = {0.2, 0.5, 1.0};
    const NiReport rep = ni_constant(cloud, 1.5, 0.8, {radii, 3});
    CHECK(rep.value >= 0.0);
    CHECK(rep.value <= 1.0);

    // binding case: the tested scale just straddles the removed strip
    const double straddle[] = {10.01};
    const NiReport strip = ni_constant(make_strip8x8(), 1.0, 1.0, {straddle, 1});
    CHECK(strip.value == doctest::Approx(2.0 / 65.0).epsilon(1e-12));
    CHECK(strip.value < 0.05);

    CHECK_THROWS_AS(ni_constant(cloud, 0.0, 1.0, {radii, 3}), std::invalid_argument);
}

TEST_CASE("maximal operator lower bound") {
    CHECK(hl_ratio(make_point1(), 2.0, 1, 1).lower_bound == 1.0);

    const Space grid16 = make_grid16();
    // independent oracle: maximal averages of the endpoint indicator over an
    // exhaustive ball scan, written out by hand
    const auto balls = enumerate_distinct_balls(grid16);
    std::vector<double> m(16, 0.0);
    for (const Ball& b : balls) {
        double mass = 0.0, sum = 0.0;
        for (int i = 0; i < 16; ++i)
            if (grid16.dist(b.center, i) < b.radius) {
                mass += 1.0;
                if (i == 0) sum += 1.0;
            }
        for (int i = 0; i < 16; ++i)
            if (grid16.dist(b.center, i) < b.radius)
                m[static_cast<std::size_t>(i)] =
                    std::max(m[static_cast<std::size_t>(i)], sum / mass);
    }
    double norm_m = 0.0;
    for (double v : m) norm_m += v * v;
    const double oracle_ratio = std::sqrt(norm_m); // ||f||_2 = 1 for the indicator

    const HlReport rep = hl_ratio(grid16, 2.0, 4, 7);
    CHECK(rep.lower_bound >= oracle_ratio - 1e-12);
    CHECK(rep.lower_bound >= 1.0);
    CHECK_THROWS_AS(hl_ratio(grid16, 1.0, 4, 7), std::invalid_argument);
    CHECK_THROWS_AS(hl_ratio(grid16, 2.0, 0, 7), std::invalid_argument);
}

TEST_CASE("space zoo generation") {
    SpaceParams one;
    one.n = 1;
    CHECK(generate_space(SpaceKind::uniform_grid_1d, one).size() == 1);

    SpaceParams three;
    three.n = 3;
    const Space line = generate_space(SpaceKind::uniform_grid_1d, three);
    CHECK(line.dist(0, 1) == 1.0);
    CHECK(line.dist(0, 2) == 2.0);
    CHECK(line.weight(2) == 1.0);

    const Space gauss = make_gaussian9x9();
    CHECK(gauss.size() == 81);
    CHECK(gauss.weight(0) == 1.0); // anchored at the origin corner
    CHECK(gauss.weight(1) == doctest::Approx(std::exp(-4.0)).epsilon(1e-15));
    CHECK(gauss.weight(80) == doctest::Approx(std::exp(-512.0)).epsilon(1e-15));

    const Space strip = make_strip8x8();
    CHECK(strip.size() == 128);
    // facing columns sit exactly one gap apart
    CHECK(strip.dist(7, 64) == 10.0);

    SpaceParams cloud;
    cloud.n = 6;
    cloud.seed = 7;
    const Space c1 = generate_space(SpaceKind::random_cloud, cloud);
    const Space c2 = generate_space(SpaceKind::random_cloud, cloud);
    for (int i = 0; i < 6; ++i) {
        CHECK(c1.weight(i) == c2.weight(i));
        CHECK(c1.coord(i, 0) == c2.coord(i, 0));
        CHECK(c1.coord(i, 1) == c2.coord(i, 1));
    }

    SpaceParams bad;
    bad.n = 0;
    CHECK_THROWS_AS(generate_space(SpaceKind::uniform_grid_1d, bad),
                    std::invalid_argument);
    SpaceParams negative;
    negative.spacing = -1.0;
    CHECK_THROWS_AS(generate_space(SpaceKind::uniform_grid_2d, negative),
                    std::invalid_argument);
    CHECK_THROWS_AS(space_kind_from_string("nope"), std::invalid_argument);
}

TEST_CASE("construction validates the metric and the weights") {
    CHECK_THROWS_AS(Space::from_distance_matrix({"a", "b", "c"},
                                                {0, 1, 5, 1, 0, 1, 5, 1, 0},
                                                {1, 1, 1}),
                    std::invalid_argument); // triangle: 5 > 1+1
    CHECK_THROWS_AS(Space::from_distance_matrix({"a", "b"}, {0, 1, 2, 0}, {1, 1}),
                    std::invalid_argument); // asymmetric
    CHECK_THROWS_AS(Space::from_distance_matrix({"a", "b"}, {0.5, 1, 1, 0}, {1, 1}),
                    std::invalid_argument); // nonzero diagonal
    CHECK_THROWS_AS(Space::from_distance_matrix({"a", "b"}, {0, 1, 1, 0}, {1, 0}),
                    std::invalid_argument); // zero weight
    CHECK_THROWS_AS(Space::from_distance_matrix({}, {}, {}), std::invalid_argument);

    // degenerate collinear triangle (equality) is a valid metric
    CHECK_NOTHROW(Space::from_distance_matrix({"a", "b", "c"},
                                              {0, 1, 3, 1, 0, 2, 3, 2, 0}, {1, 1, 1}));
}

TEST_CASE("default audit radii stop before the doubling ratio saturates") {
    const auto radii = default_audit_radii(make_gaussian9x9());
    CHECK(radii == std::vector<double>{1.0, 2.0, 4.0, 8.0});
}

TEST_CASE("gaussian plane doubling grows across the dyadic scales") {
    const double radii[] = {1.0, 2.0, 4.0, 8.0};
    const DoublingReport rep = doubling_constant(make_gaussian9x9(), {radii, 4});
    CHECK(rep.strictly_increasing);
    for (std::size_t k = 0; k + 1 < rep.per_radius.size(); ++k)
        CHECK(rep.per_radius[k].second < rep.per_radius[k + 1].second);
}

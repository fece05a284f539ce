#pragma once

// Shared fixtures for the unit and acceptance suites: the canonical small
// spaces and grid builders the whole test corpus runs on.

#include <cmath>

#include "tentspace/grid.hpp"
#include "tentspace/space.hpp"

namespace ts = tentspace;

inline ts::Space make_point1() {
    return ts::Space::from_points({"p"}, {0.0}, 1, {1.0});
}

// Three points on a line at 0, 1, 3 with unit weights.
inline ts::Space make_s3() {
    return ts::Space::from_points({"a", "b", "c"}, {0.0, 1.0, 3.0}, 1, {1.0, 1.0, 1.0});
}

// Four points with dyadic weights; small enough to exhaust all subsets.
inline ts::Space make_line4() {
    return ts::Space::from_points({}, {0.0, 1.0, 2.5, 5.5}, 1, {1.0, 0.5, 2.0, 1.25});
}

inline ts::Space make_grid16() {
    ts::SpaceParams params;
    params.n = 16;
    return ts::generate_space(ts::SpaceKind::uniform_grid_1d, params);
}

inline ts::Space make_gaussian9x9() {
    ts::SpaceParams params;
    params.nx = params.ny = 9;
    params.spacing = 2.0;
    return ts::generate_space(ts::SpaceKind::gaussian_plane, params);
}

inline ts::Space make_strip8x8() {
    ts::SpaceParams params;
    params.nx = params.ny = 8;
    params.gap = 10.0;
    return ts::generate_space(ts::SpaceKind::strip_removed_plane, params);
}

// Single-slab grid whose representative is exactly `tau`.
inline ts::TimeGrid single_slab(double tau) { return ts::TimeGrid(tau / 2.0, 4.0, 1); }

// Geometric grid with representatives 0.5, 2, 8, ... (ratio 4).
inline ts::TimeGrid quarter_grid(int slabs) { return ts::TimeGrid(0.25, 4.0, slabs); }

#pragma once

#include <string>

#include <json.hpp>

#include "tentspace/grid.hpp"
#include "tentspace/space.hpp"

namespace tentspace {

// Space files come in two shapes: a coordinate CSV with header
// "id,x0,...,x{d-1},weight" (metric = Euclidean), or an explicit distance
// matrix CSV ("id,<id0>,<id1>,...") paired with a weight CSV ("id,weight").
// Half-space functions and masks share one layout: header "t,<id0>,...",
// one row per slab led by its representative tau_j. Masks round-trip
// bit-exactly; values are printed with 17 significant digits.

void write_space_csv(const Space& space, const std::string& path);
Space read_space_csv(const std::string& path);

void write_space_matrix_csv(const Space& space, const std::string& dist_path,
                            const std::string& weight_path);
Space read_space_matrix_csv(const std::string& dist_path,
                            const std::string& weight_path);

void write_function_csv(const Space& space, const TimeGrid& grid,
                        const HalfSpaceFunction& f, const std::string& path);
HalfSpaceFunction read_function_csv(const Space& space, const TimeGrid& grid,
                                    const std::string& path);

void write_mask_csv(const Space& space, const TimeGrid& grid, const RegionMask& mask,
                    const std::string& path);
RegionMask read_mask_csv(const Space& space, const TimeGrid& grid,
                         const std::string& path);

void write_values_csv(const Space& space, std::span<const double> values,
                      const std::string& path);

nlohmann::json audit_to_json(const GeometryAudit& audit, const std::string& kind,
                             const nlohmann::json& params);

} // namespace tentspace

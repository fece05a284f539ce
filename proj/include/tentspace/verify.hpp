#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tentspace/grid.hpp"
#include "tentspace/space.hpp"

namespace tentspace {

/// Outcome of one named verification run. Identity checks measure a relative
/// defect against a pinned tolerance; set and counting checks report the
/// number of violations with tolerance zero. A check whose exactness
/// precondition fails on the given grid is reported as skipped with the
/// violated condition named, never as a silent pass.
struct CheckResult {
    std::string name;
    std::string space;
    std::string grid;
    std::uint64_t seed = 0;
    double measured_defect = 0.0;
    double tolerance = 0.0;
    std::map<std::string, double> constants;
    bool pass = false;
    bool skipped = false;
    std::string skip_reason;
};

struct CheckConfig {
    double p = 2.0;
    double q = 2.0;
    double alpha = 1.0;
    double beta = 2.0;
    double gamma = 0.5;
    double big_m = 0.0; // 0: calibrate from the measured doubling-chain constant
    int trials = 100;
    std::uint64_t seed = 1;
};

/// All registered check names, in report order.
std::vector<std::string> check_names();

CheckResult run_check(const std::string& name, const Space& space, const TimeGrid& grid,
                      const CheckConfig& config = {},
                      const std::string& space_name = "space");

enum class Suite { identities, inequalities, set_geometry, assumptions, all };

Suite suite_from_string(const std::string& name);
std::string to_string(Suite suite);
std::vector<std::string> suite_checks(Suite suite);

struct NamedSpace {
    std::string name;
    Space space;
};

/// Built-in spaces the suites run on when the caller does not supply any.
std::vector<NamedSpace> default_zoo();

std::vector<CheckResult> run_suite(Suite suite, std::span<const NamedSpace> spaces,
                                   const CheckConfig& config = {});

/// True when every non-skipped result passed.
bool all_passed(std::span<const CheckResult> results);

nlohmann::json to_json(const CheckResult& result);
nlohmann::json report_to_json(std::span<const CheckResult> results);
std::string summary_table(std::span<const CheckResult> results);

} // namespace tentspace

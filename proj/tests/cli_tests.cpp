#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "support.hpp"
#include "tentspace/io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string output;
};

fs::path work_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "tentspace_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out = work_dir() / ("out" + std::to_string(counter++) + ".txt");
    const std::string cmd = "cd '" + work_dir().string() + "' && '" CLI_BINARY_PATH
                            "' " + args + " > '" + out.string() + "' 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    result.output = ss.str();
    return result;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int line_count(const std::string& text) {
    int lines = 0;
    for (char ch : text)
        if (ch == '\n') ++lines;
    return lines;
}

} // namespace

TEST_CASE("gen writes coordinate CSVs deterministically") {
    RunResult r = run_cli("gen --gen uniform_grid_1d --n 3 --out tiny");
    CHECK(r.code == 0);
    CHECK(line_count(slurp(work_dir() / "tiny.csv")) == 4); // header + 3 rows

    CHECK(run_cli("--seed 7 gen --gen random_cloud --n 6 --out cloud_a").code == 0);
    CHECK(run_cli("--seed 7 gen --gen random_cloud --n 6 --out cloud_b").code == 0);
    CHECK(slurp(work_dir() / "cloud_a.csv") == slurp(work_dir() / "cloud_b.csv"));

    RunResult g = run_cli("gen --gen gaussian_plane --out gauss --matrix");
    CHECK(g.code == 0);
    CHECK(line_count(slurp(work_dir() / "gauss.csv")) == 82); // header + 81 rows
    CHECK(fs::exists(work_dir() / "gauss.dist.csv"));
    CHECK(fs::exists(work_dir() / "gauss.weight.csv"));

    // round trip through both on-disk formats reproduces the space
    const ts::Space a = ts::read_space_csv((work_dir() / "gauss.csv").string());
    const ts::Space b = ts::read_space_matrix_csv(
        (work_dir() / "gauss.dist.csv").string(),
        (work_dir() / "gauss.weight.csv").string());
    REQUIRE(a.size() == 81);
    REQUIRE(b.size() == 81);
    for (int i = 0; i < 81; ++i) {
        CHECK(a.weight(i) == b.weight(i));
        for (int j = 0; j < 81; ++j)
            CHECK(a.dist(i, j) == doctest::Approx(b.dist(i, j)).epsilon(1e-15));
    }

    CHECK(run_cli("gen --gen no_such_kind --out x").code == 2);
    CHECK(run_cli("gen --gen uniform_grid_1d --n 0 --out x").code == 2);
}

TEST_CASE("audit reports the geometry of the zoo") {
    RunResult one = run_cli("audit --gen uniform_grid_1d --n 1 --out one.json");
    CHECK(one.code == 0);
    const auto j1 = nlohmann::json::parse(slurp(work_dir() / "one.json"));
    CHECK(j1["doubling"]["constant"] == 1.0);
    CHECK(j1["ni"][0]["value"] == 1.0);
    CHECK(j1["hl"][0]["lower_bound"] == 1.0);

    RunResult grid = run_cli("audit --gen uniform_grid_1d --n 16 --out grid.json");
    CHECK(grid.code == 0);
    const auto j2 = nlohmann::json::parse(slurp(work_dir() / "grid.json"));
    CHECK(j2["doubling"]["constant"].get<double>() <= 3.0);

    RunResult strip = run_cli(
        "audit --gen strip_removed_plane --nx 8 --ny 8 --gap 10 "
        "--radii 10.01 --alpha 1 --beta 1 --out strip.json");
    CHECK(strip.code == 0);
    const auto j3 = nlohmann::json::parse(slurp(work_dir() / "strip.json"));
    CHECK(j3["ni"][0]["value"].get<double>() < 0.05);

    RunResult gauss = run_cli("audit --gen gaussian_plane --out gaussaudit.json");
    CHECK(gauss.code == 0);
    const auto j4 = nlohmann::json::parse(slurp(work_dir() / "gaussaudit.json"));
    CHECK(j4["doubling"]["unbounded_at_tested_scales"] == true);

    // matrix-format ingestion reaches the same audit
    CHECK(run_cli("gen --gen uniform_grid_1d --n 16 --out m16 --matrix").code == 0);
    RunResult viamatrix = run_cli(
        "audit --space-dist m16.dist.csv --space-weights m16.weight.csv "
        "--out m16.json");
    CHECK(viamatrix.code == 0);
    const auto j5 = nlohmann::json::parse(slurp(work_dir() / "m16.json"));
    CHECK(j5["doubling"]["constant"] == j2["doubling"]["constant"]);
}

TEST_CASE("explicit spacing overrides the gaussian default") {
    CHECK(run_cli("gen --gen gaussian_plane --spacing 1 --out g1").code == 0);
    const ts::Space g1 = ts::read_space_csv((work_dir() / "g1.csv").string());
    CHECK(g1.coord(1, 0) == 1.0);
    CHECK(run_cli("gen --gen gaussian_plane --out g2").code == 0);
    const ts::Space g2 = ts::read_space_csv((work_dir() / "g2.csv").string());
    CHECK(g2.coord(1, 0) == 2.0);
}

TEST_CASE("norm computes tent norms from sample files") {
    // one-point space, four slabs of unit mass each: the 2,2 norm is exactly 2
    CHECK(run_cli("gen --gen uniform_grid_1d --n 1 --out pt").code == 0);
    const ts::Space pt = ts::read_space_csv((work_dir() / "pt.csv").string());
    const ts::TimeGrid grid(0.5, std::exp(1.0), 4);
    const ts::HalfSpaceFunction ones(4, 1, 1.0);
    ts::write_function_csv(pt, grid, ones, (work_dir() / "ones.csv").string());

    RunResult r = run_cli(
        "norm --space pt.csv --tmin 0.5 --sigma 2.718281828459045235 --slabs 4 "
        "--f ones.csv --p 2 --q 2 --alpha 1 --emit-A lusin.csv");
    CHECK(r.code == 0);
    CHECK(std::abs(std::stod(r.output) - 2.0) < 1e-9);
    CHECK(fs::exists(work_dir() / "lusin.csv"));

    // zero samples give a zero norm
    ts::write_function_csv(pt, grid, ts::HalfSpaceFunction(4, 1),
                           (work_dir() / "zero.csv").string());
    RunResult z = run_cli(
        "norm --space pt.csv --tmin 0.5 --sigma 2.718281828459045235 --slabs 4 "
        "--f zero.csv --p 2 --q 2 --alpha 1");
    CHECK(z.code == 0);
    CHECK(std::stod(z.output) == 0.0);

    // on one point every kernel variant gives the same value, as does p = inf
    RunResult xv = run_cli(
        "norm --space pt.csv --tmin 0.5 --sigma 2.718281828459045235 --slabs 4 "
        "--f ones.csv --p 2 --q 2 --alpha 1 --variant x-unit");
    CHECK(xv.code == 0);
    CHECK(std::abs(std::stod(xv.output) - 2.0) < 1e-9);
    RunResult pinf = run_cli(
        "norm --space pt.csv --tmin 0.5 --sigma 2.718281828459045235 --slabs 4 "
        "--f ones.csv --p-inf --q 2 --alpha 1");
    CHECK(pinf.code == 0);
    CHECK(std::abs(std::stod(pinf.output) - 2.0) < 1e-9);
    CHECK(run_cli("norm --space pt.csv --tmin 0.5 --sigma 2.718281828459045235 "
                  "--slabs 4 --f ones.csv --variant bogus")
              .code == 2);

    // dimension mismatch between the sample file and the grid
    RunResult bad = run_cli(
        "norm --space pt.csv --tmin 0.5 --sigma 2.718281828459045235 --slabs 6 "
        "--f ones.csv --p 2 --q 2 --alpha 1");
    CHECK(bad.code == 2);
    CHECK(bad.output.find("error:") != std::string::npos);

    CHECK(run_cli("norm --space pt.csv --p 2 --q 2").code == 2); // no --f
}

TEST_CASE("verify runs checks and suites with stable reports") {
    RunResult one = run_cli("verify --check avgtrick --gen uniform_grid_1d --n 4");
    CHECK(one.code == 0);
    CHECK(one.output.find("pass  avgtrick") != std::string::npos);

    CHECK(run_cli("verify --check avgtrick --gen uniform_grid_1d --n 4 --out va.json")
              .code == 0);
    CHECK(run_cli("verify --check avgtrick --gen uniform_grid_1d --n 4 --out vb.json")
              .code == 0);
    CHECK(slurp(work_dir() / "va.json") == slurp(work_dir() / "vb.json"));

    // a grid too coarse for the inclusion check is skipped, never silently passed
    RunResult coarse = run_cli(
        "verify --check tent_inclusion --gen uniform_grid_1d --n 3 "
        "--tmin 100 --sigma 2 --slabs 2");
    CHECK(coarse.code == 0);
    CHECK(coarse.output.find("SKIP") != std::string::npos);
    CHECK(coarse.output.find("t_min") != std::string::npos);

    const fs::path corrupt = work_dir() / "corrupt.csv";
    std::ofstream(corrupt) << "id,x0,weight\np0,0,not_a_number\n";
    RunResult bad = run_cli("verify --suite identities --space corrupt.csv");
    CHECK(bad.code == 2);
    CHECK(bad.output.find("error:") != std::string::npos);

    CHECK(run_cli("verify --suite no_such_suite").code == 2);
    CHECK(run_cli("nonsense-subcommand").code == 2);

    RunResult csv = run_cli(
        "verify --check lp_coincidence --gen uniform_grid_1d --n 3 --format csv");
    CHECK(csv.code == 0);
    CHECK(csv.output.find("name,space,pass") != std::string::npos);
}

TEST_CASE("the full verification suite passes on the default zoo") {
    RunResult all = run_cli("verify --suite all --out zoo.json");
    CHECK(all.code == 0);
    CHECK(all.output.find("FAIL") == std::string::npos);
}

TEST_CASE("every check passes on an irregular weighted cloud") {
    RunResult cloud = run_cli("verify --suite all --gen random_cloud --n 9 --seed 5");
    CHECK(cloud.code == 0);
    CHECK(cloud.output.find("FAIL") == std::string::npos);

    // the seed flag binds the same before or after the subcommand
    CHECK(run_cli("gen --gen random_cloud --n 5 --seed 3 --out c_post").code == 0);
    CHECK(run_cli("--seed 3 gen --gen random_cloud --n 5 --out c_pre").code == 0);
    CHECK(slurp(work_dir() / "c_post.csv") == slurp(work_dir() / "c_pre.csv"));
}

#include "tentspace/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tentspace {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        rows.push_back(split_csv_line(line));
    }
    if (rows.empty()) throw std::runtime_error("'" + path + "' is empty");
    return rows;
}

double parse_double(const std::string& s, const std::string& path) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("'" + path + "': malformed numeric field '" + s + "'");
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    return out;
}

} // namespace

void write_space_csv(const Space& space, const std::string& path) {
    if (!space.has_coords())
        throw std::runtime_error("space has no coordinates; use the matrix format");
    auto out = open_out(path);
    out << "id";
    for (int k = 0; k < space.coord_dim(); ++k) out << ",x" << k;
    out << ",weight\n";
    for (int i = 0; i < space.size(); ++i) {
        out << space.ids()[static_cast<std::size_t>(i)];
        for (int k = 0; k < space.coord_dim(); ++k) out << ',' << fmt17(space.coord(i, k));
        out << ',' << fmt17(space.weight(i)) << '\n';
    }
}

Space read_space_csv(const std::string& path) {
    const auto rows = read_csv(path);
    const auto& header = rows[0];
    if (header.size() < 3 || header[0] != "id" || header.back() != "weight")
        throw std::runtime_error("'" + path + "': expected header id,x0,...,weight");
    const int dim = static_cast<int>(header.size()) - 2;
    std::vector<std::string> ids;
    std::vector<double> coords, weights;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != header.size())
            throw std::runtime_error("'" + path + "': row " + std::to_string(r) +
                                     " has wrong field count");
        ids.push_back(rows[r][0]);
        for (int k = 0; k < dim; ++k)
            coords.push_back(parse_double(rows[r][static_cast<std::size_t>(k) + 1], path));
        weights.push_back(parse_double(rows[r].back(), path));
    }
    return Space::from_points(std::move(ids), std::move(coords), dim, std::move(weights));
}

void write_space_matrix_csv(const Space& space, const std::string& dist_path,
                            const std::string& weight_path) {
    {
        auto out = open_out(dist_path);
        out << "id";
        for (const auto& id : space.ids()) out << ',' << id;
        out << '\n';
        for (int i = 0; i < space.size(); ++i) {
            out << space.ids()[static_cast<std::size_t>(i)];
            for (int j = 0; j < space.size(); ++j) out << ',' << fmt17(space.dist(i, j));
            out << '\n';
        }
    }
    auto out = open_out(weight_path);
    out << "id,weight\n";
    for (int i = 0; i < space.size(); ++i)
        out << space.ids()[static_cast<std::size_t>(i)] << ','
            << fmt17(space.weight(i)) << '\n';
}

Space read_space_matrix_csv(const std::string& dist_path,
                            const std::string& weight_path) {
    const auto drows = read_csv(dist_path);
    const auto wrows = read_csv(weight_path);
    const std::size_t n = drows.size() - 1;
    if (drows[0].size() != n + 1)
        throw std::runtime_error("'" + dist_path + "': row count mismatch with header");
    if (wrows.size() != n + 1)
        throw std::runtime_error("'" + weight_path + "': row count mismatch with '" +
                                 dist_path + "'");
    std::vector<std::string> ids;
    std::vector<double> dist, weights;
    for (std::size_t r = 1; r <= n; ++r) {
        if (drows[r].size() != n + 1)
            throw std::runtime_error("'" + dist_path + "': row " + std::to_string(r) +
                                     " has wrong field count");
        ids.push_back(drows[r][0]);
        for (std::size_t c = 1; c <= n; ++c)
            dist.push_back(parse_double(drows[r][c], dist_path));
    }
    for (std::size_t r = 1; r <= n; ++r) {
        if (wrows[r].size() != 2 || wrows[r][0] != ids[r - 1])
            throw std::runtime_error("'" + weight_path + "': ids do not match '" +
                                     dist_path + "'");
        weights.push_back(parse_double(wrows[r][1], weight_path));
    }
    return Space::from_distance_matrix(std::move(ids), std::move(dist), std::move(weights));
}

namespace {

void check_grid_header(const Space& space, const std::vector<std::string>& header,
                       const std::string& path) {
    if (header.size() != static_cast<std::size_t>(space.size()) + 1 || header[0] != "t")
        throw std::runtime_error("'" + path + "': header does not match the space");
    for (int i = 0; i < space.size(); ++i)
        if (header[static_cast<std::size_t>(i) + 1] != space.ids()[static_cast<std::size_t>(i)])
            throw std::runtime_error("'" + path + "': point ids do not match the space");
}

void check_tau(const TimeGrid& grid, int j, double tau, const std::string& path) {
    if (std::abs(tau - grid.tau(j)) > 1e-9 * grid.tau(j))
        throw std::runtime_error("'" + path + "': slab times do not match the grid");
}

} // namespace

void write_function_csv(const Space& space, const TimeGrid& grid,
                        const HalfSpaceFunction& f, const std::string& path) {
    require_same_shape(space, grid, f);
    auto out = open_out(path);
    out << "t";
    for (const auto& id : space.ids()) out << ',' << id;
    out << '\n';
    for (int j = 0; j < grid.slabs(); ++j) {
        out << fmt17(grid.tau(j));
        for (int i = 0; i < space.size(); ++i) out << ',' << fmt17(f.at(j, i));
        out << '\n';
    }
}

HalfSpaceFunction read_function_csv(const Space& space, const TimeGrid& grid,
                                    const std::string& path) {
    const auto rows = read_csv(path);
    check_grid_header(space, rows[0], path);
    if (rows.size() != static_cast<std::size_t>(grid.slabs()) + 1)
        throw std::runtime_error("'" + path + "': slab count does not match the grid");
    HalfSpaceFunction f(grid.slabs(), space.size());
    for (int j = 0; j < grid.slabs(); ++j) {
        const auto& row = rows[static_cast<std::size_t>(j) + 1];
        if (row.size() != static_cast<std::size_t>(space.size()) + 1)
            throw std::runtime_error("'" + path + "': row " + std::to_string(j + 1) +
                                     " has wrong field count");
        check_tau(grid, j, parse_double(row[0], path), path);
        for (int i = 0; i < space.size(); ++i)
            f.at(j, i) = parse_double(row[static_cast<std::size_t>(i) + 1], path);
    }
    if (!f.all_finite())
        throw std::runtime_error("'" + path + "': non-finite sample value");
    return f;
}

void write_mask_csv(const Space& space, const TimeGrid& grid, const RegionMask& mask,
                    const std::string& path) {
    auto out = open_out(path);
    out << "t";
    for (const auto& id : space.ids()) out << ',' << id;
    out << '\n';
    for (int j = 0; j < grid.slabs(); ++j) {
        out << fmt17(grid.tau(j));
        for (int i = 0; i < space.size(); ++i) out << ',' << (mask.test(j, i) ? 1 : 0);
        out << '\n';
    }
}

RegionMask read_mask_csv(const Space& space, const TimeGrid& grid,
                         const std::string& path) {
    const auto rows = read_csv(path);
    check_grid_header(space, rows[0], path);
    if (rows.size() != static_cast<std::size_t>(grid.slabs()) + 1)
        throw std::runtime_error("'" + path + "': slab count does not match the grid");
    RegionMask mask(grid.slabs(), space.size());
    for (int j = 0; j < grid.slabs(); ++j) {
        const auto& row = rows[static_cast<std::size_t>(j) + 1];
        if (row.size() != static_cast<std::size_t>(space.size()) + 1)
            throw std::runtime_error("'" + path + "': row " + std::to_string(j + 1) +
                                     " has wrong field count");
        check_tau(grid, j, parse_double(row[0], path), path);
        for (int i = 0; i < space.size(); ++i) {
            const std::string& field = row[static_cast<std::size_t>(i) + 1];
            if (field == "1") mask.set(j, i);
            else if (field != "0")
                throw std::runtime_error("'" + path + "': mask field must be 0 or 1");
        }
    }
    return mask;
}

void write_values_csv(const Space& space, std::span<const double> values,
                      const std::string& path) {
    if (values.size() != static_cast<std::size_t>(space.size()))
        throw std::invalid_argument("write_values_csv: value count does not match space");
    auto out = open_out(path);
    out << "id,value\n";
    for (int i = 0; i < space.size(); ++i)
        out << space.ids()[static_cast<std::size_t>(i)] << ','
            << fmt17(values[static_cast<std::size_t>(i)]) << '\n';
}

nlohmann::json audit_to_json(const GeometryAudit& audit, const std::string& kind,
                             const nlohmann::json& params) {
    nlohmann::json j;
    j["kind"] = kind;
    j["params"] = params;
    j["seed"] = audit.seed;
    j["radii"] = audit.radii;

    nlohmann::json doubling;
    doubling["constant"] = audit.doubling.constant;
    doubling["argmax_center"] = audit.doubling.argmax_center;
    doubling["argmax_radius"] = audit.doubling.argmax_radius;
    doubling["unbounded_at_tested_scales"] = audit.doubling.strictly_increasing;
    nlohmann::json table = nlohmann::json::array();
    for (auto [r, v] : audit.doubling.per_radius)
        table.push_back({{"radius", r}, {"max_ratio", v}});
    doubling["per_radius"] = table;
    j["doubling"] = doubling;

    nlohmann::json ni = nlohmann::json::array();
    for (const auto& [pair, report] : audit.ni)
        ni.push_back({{"alpha", pair.first},
                      {"beta", pair.second},
                      {"value", report.value},
                      {"argmin_radius", report.argmin_radius}});
    j["ni"] = ni;

    nlohmann::json hl = nlohmann::json::array();
    for (const auto& [r, report] : audit.hl)
        hl.push_back({{"exponent", r},
                      {"lower_bound", report.lower_bound},
                      {"argmax", report.argmax}});
    j["hl"] = hl;
    return j;
}

} // namespace tentspace

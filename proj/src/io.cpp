#include "umgen/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "umgen/errors.hpp"

namespace umgen::io {

namespace {

using nlohmann::json;

std::string format_double(double value, const char* fmt) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, value);
    return buf;
}

std::string full(double value) { return format_double(value, "%.17g"); }

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open file for writing", path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file for reading", path.string());
    return in;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    return fields;
}

double parse_double(const std::string& text, const std::filesystem::path& path) {
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw IoError("malformed numeric field '" + text + "'", path.string());
    return value;
}

json topology_to_json(const TreeTopology& topology) {
    return json{{"levels", topology.levels()},
                {"branching", topology.branching},
                {"sigmas", topology.sigmas},
                {"base_mean", topology.base_mean}};
}

TreeTopology topology_from_json(const json& j, const std::filesystem::path& path) {
    TreeTopology topology;
    try {
        topology.branching = j.at("branching").get<std::vector<int>>();
        topology.sigmas = j.at("sigmas").get<std::vector<double>>();
        if (j.contains("base_mean")) topology.base_mean = j.at("base_mean").get<double>();
        if (j.contains("levels") &&
            j.at("levels").get<int>() != static_cast<int>(topology.branching.size()))
            throw IoError("levels does not match branching length", path.string());
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed topology: ") + e.what(), path.string());
    }
    topology.validate();
    return topology;
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
    std::filesystem::path p = csv_path;
    p.replace_extension(".meta.json");
    return p;
}

void write_point_cloud(const std::filesystem::path& csv_path, const PointCloud& cloud) {
    auto out = open_out(csv_path);
    const int n_levels = cloud.topology.levels();
    out << "leaf_linear";
    for (int k = 1; k <= n_levels; ++k) out << ",a_" << k;
    for (int i = 1; i <= cloud.dimension; ++i) out << ",x_" << i;
    out << '\n';
    for (std::size_t r = 0; r < cloud.rows(); ++r) {
        out << r;
        for (const int component : delinearize(r, cloud.topology)) out << ',' << component;
        for (const double x : cloud.row(r)) out << ',' << full(x);
        out << '\n';
    }
    if (!out) throw IoError("write failed", csv_path.string());

    json meta{{"topology", topology_to_json(cloud.topology)},
              {"seed", cloud.seed},
              {"dimension", cloud.dimension}};
    auto side = open_out(sidecar_path(csv_path));
    side << meta.dump(2) << '\n';
    if (!side) throw IoError("write failed", sidecar_path(csv_path).string());
}

PointCloud read_point_cloud(const std::filesystem::path& csv_path) {
    const auto meta_path = sidecar_path(csv_path);
    if (!std::filesystem::exists(meta_path))
        throw IoError("cloud sidecar not found (expected next to the CSV)", meta_path.string());
    json meta;
    try {
        open_in(meta_path) >> meta;
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed sidecar JSON: ") + e.what(), meta_path.string());
    }

    PointCloud cloud;
    cloud.topology = topology_from_json(meta.at("topology"), meta_path);
    try {
        cloud.seed = meta.at("seed").get<std::uint64_t>();
        cloud.dimension = meta.at("dimension").get<int>();
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed sidecar JSON: ") + e.what(), meta_path.string());
    }
    if (cloud.dimension < 1) throw IoError("sidecar dimension must be >= 1", meta_path.string());

    const std::size_t leaves = cloud.topology.leaf_count();
    const auto dim = static_cast<std::size_t>(cloud.dimension);
    const auto n_levels = static_cast<std::size_t>(cloud.topology.levels());
    cloud.points.assign(leaves * dim, 0.0);

    auto in = open_in(csv_path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("missing header row", csv_path.string());
    std::size_t rows_seen = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 1 + n_levels + dim)
            throw IoError("row has " + std::to_string(fields.size()) + " fields, expected " +
                              std::to_string(1 + n_levels + dim),
                          csv_path.string());
        const auto linear = static_cast<std::size_t>(parse_double(fields[0], csv_path));
        if (linear >= leaves) throw IoError("leaf_linear out of range", csv_path.string());
        for (std::size_t i = 0; i < dim; ++i)
            cloud.points[linear * dim + i] = parse_double(fields[1 + n_levels + i], csv_path);
        ++rows_seen;
    }
    if (rows_seen != leaves)
        throw IoError("cloud has " + std::to_string(rows_seen) + " rows, topology expects " +
                          std::to_string(leaves),
                      csv_path.string());
    return cloud;
}

void write_matrix(const std::filesystem::path& csv_path, const DistanceMatrix& m,
                  MatrixPrecision precision) {
    const char* fmt = precision == MatrixPrecision::display ? "%.6f" : "%.17g";
    auto out = open_out(csv_path);
    for (std::size_t a = 0; a < m.size; ++a) {
        for (std::size_t b = 0; b < m.size; ++b) {
            if (b > 0) out << ',';
            out << format_double(m.at(a, b), fmt);
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed", csv_path.string());
}

void write_matrix_meta(const std::filesystem::path& csv_path, const DistanceMatrix& m,
                       const std::string& source) {
    json meta{{"size", m.size}, {"source", source}};
    if (!m.labels.empty()) meta["labels"] = m.labels;
    auto out = open_out(sidecar_path(csv_path));
    out << meta.dump(2) << '\n';
    if (!out) throw IoError("write failed", sidecar_path(csv_path).string());
}

DistanceMatrix read_matrix(const std::filesystem::path& csv_path) {
    auto in = open_in(csv_path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& field : fields) row.push_back(parse_double(field, csv_path));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError("matrix file is empty", csv_path.string());
    const std::size_t n = rows.size();
    DistanceMatrix m;
    m.size = n;
    m.entries.reserve(n * n);
    for (const auto& row : rows) {
        if (row.size() != n)
            throw IoError("matrix is not square: row with " + std::to_string(row.size()) +
                              " fields in a " + std::to_string(n) + "-row file",
                          csv_path.string());
        m.entries.insert(m.entries.end(), row.begin(), row.end());
    }

    const auto meta_path = sidecar_path(csv_path);
    if (std::filesystem::exists(meta_path)) {
        try {
            json meta;
            open_in(meta_path) >> meta;
            if (meta.contains("labels")) m.labels = meta["labels"].get<std::vector<LeafPath>>();
        } catch (const json::exception& e) {
            throw IoError(std::string("malformed matrix sidecar: ") + e.what(),
                          meta_path.string());
        }
        if (!m.labels.empty() && m.labels.size() != n)
            throw IoError("sidecar labels do not match matrix size", meta_path.string());
    }
    return m;
}

std::string summary_to_json(const IndexSummary& summary) {
    json j{{"U", summary.ultrametricity},
           {"E", summary.isometricity},
           {"triangle_count", summary.triangle_count},
           {"mode", summary.mode == IndexMode::exact ? "exact" : "sampled"}};
    if (summary.standard_error_u || summary.standard_error_e) {
        json se;
        if (summary.standard_error_u) se["U"] = *summary.standard_error_u;
        if (summary.standard_error_e) se["E"] = *summary.standard_error_e;
        j["standard_error"] = se;
    }
    if (summary.seed) j["seed"] = *summary.seed;
    if (summary.skipped_triangles > 0) j["skipped_triangles"] = summary.skipped_triangles;
    return j.dump();
}

void write_summary(const std::filesystem::path& json_path, const IndexSummary& summary) {
    auto out = open_out(json_path);
    out << summary_to_json(summary) << '\n';
    if (!out) throw IoError("write failed", json_path.string());
}

void write_dendrogram(const std::filesystem::path& json_path, const Dendrogram& dendrogram) {
    json merges = json::array();
    for (const Merge& merge : dendrogram.merges)
        merges.push_back(json{{"left", merge.left}, {"right", merge.right},
                              {"height", merge.height}});
    json j{{"leaf_count", dendrogram.leaf_count}, {"merges", merges}};
    auto out = open_out(json_path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed", json_path.string());
}

}  // namespace umgen::io

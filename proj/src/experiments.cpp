#include "umgen/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "umgen/errors.hpp"
#include "umgen/generator.hpp"
#include "umgen/indexes.hpp"
#include "umgen/io.hpp"
#include "umgen/ultrametric.hpp"

namespace umgen {

namespace {

using nlohmann::json;

std::string full(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

double max_abs_deviation(const DistanceMatrix& empirical, const DistanceMatrix& theoretical) {
    double worst = 0.0;
    for (std::size_t i = 0; i < empirical.entries.size(); ++i)
        worst = std::max(worst, std::abs(empirical.entries[i] - theoretical.entries[i]));
    return worst;
}

IndexSummary series_indexes(const DistanceMatrix& m, const ExperimentConfig& config,
                            std::uint64_t seed, int threads) {
    IndexOptions options;
    options.threads = threads;
    if (config.index_mode == IndexMode::sampled)
        return sampled_indexes(m, config.sample_count, seed, options);
    return matrix_indexes(m, options);
}

void ensure_outputs_dir(const ExperimentConfig& config) {
    std::error_code ec;
    std::filesystem::create_directories(config.outputs, ec);
    if (ec) throw IoError("cannot create output directory", config.outputs.string());
}

}  // namespace

MatrixExperimentReport run_matrix_experiment(const ExperimentConfig& config,
                                             const RunOptions& options) {
    if (config.dimensions.size() != 1)
        throw ConfigError("matrix experiment needs exactly one dimension in the config");
    if (config.seeds.empty()) throw ConfigError("matrix experiment needs at least one seed");
    const int dimension = config.dimensions.front();

    const UltrametricMatrix theoretical = theoretical_ultrametric(config.topology);
    if (options.write_files) {
        ensure_outputs_dir(config);
        io::write_matrix(config.outputs / "theoretical.csv", theoretical,
                         io::MatrixPrecision::full);
        io::write_matrix(config.outputs / "theoretical.display.csv", theoretical,
                         io::MatrixPrecision::display);
        io::write_matrix_meta(config.outputs / "theoretical.csv", theoretical, "theory");
    }

    MatrixExperimentReport report;
    report.topology = config.topology;
    report.dimension = dimension;

    for (const std::uint64_t seed : config.seeds) {
        GenerateOptions gen_options;
        gen_options.threads = options.threads;
        const PointCloud cloud =
            generate_hierarchical_points(config.topology, dimension, seed, gen_options);
        DistanceOptions dist_options;
        dist_options.threads = options.threads;
        const DistanceMatrix empirical = distance_matrix(cloud, dist_options);

        if (options.write_files) {
            const std::string stem = "empirical_s" + std::to_string(seed);
            io::write_matrix(config.outputs / (stem + ".csv"), empirical,
                             io::MatrixPrecision::full);
            io::write_matrix(config.outputs / (stem + ".display.csv"), empirical,
                             io::MatrixPrecision::display);
            io::write_matrix_meta(config.outputs / (stem + ".csv"), empirical,
                                  "generated, seed " + std::to_string(seed));
        }

        MatrixExperimentSeedResult result;
        result.seed = seed;

        // Group unordered pairs by their theoretical value (one class per
        // tree level present in the matrix).
        std::map<double, ValueClassStats> classes;
        for (std::size_t a = 0; a < empirical.size; ++a) {
            for (std::size_t b = a + 1; b < empirical.size; ++b) {
                const double expected = theoretical.at(a, b);
                const double deviation = std::abs(empirical.at(a, b) - expected);
                auto& cls = classes[expected];
                cls.theoretical = expected;
                cls.pair_count += 1;
                cls.mean_empirical += empirical.at(a, b);
                cls.max_abs_deviation = std::max(cls.max_abs_deviation, deviation);
                result.max_abs_deviation = std::max(result.max_abs_deviation, deviation);
            }
        }
        for (auto& [value, cls] : classes) {
            cls.mean_empirical /= static_cast<double>(cls.pair_count);
            result.classes.push_back(cls);
        }
        report.max_abs_deviation = std::max(report.max_abs_deviation, result.max_abs_deviation);
        report.per_seed.push_back(std::move(result));
    }

    if (options.write_files) {
        json per_seed = json::array();
        for (const auto& result : report.per_seed) {
            json classes = json::array();
            for (const auto& cls : result.classes)
                classes.push_back(json{{"theoretical", cls.theoretical},
                                       {"pair_count", cls.pair_count},
                                       {"mean_empirical", cls.mean_empirical},
                                       {"max_abs_deviation", cls.max_abs_deviation}});
            per_seed.push_back(json{{"seed", result.seed},
                                    {"max_abs_deviation", result.max_abs_deviation},
                                    {"value_classes", classes}});
        }
        json j{{"topology",
                {{"levels", config.topology.levels()},
                 {"branching", config.topology.branching},
                 {"sigmas", config.topology.sigmas},
                 {"base_mean", config.topology.base_mean}}},
               {"dimension", dimension},
               {"per_seed", per_seed},
               {"max_abs_deviation", report.max_abs_deviation}};
        std::ofstream out(config.outputs / "report.json");
        if (!out) throw IoError("cannot open file for writing",
                                (config.outputs / "report.json").string());
        out << j.dump(2) << '\n';
    }
    return report;
}

ConvergenceSeries run_convergence_sweep(const ExperimentConfig& config,
                                        const RunOptions& options) {
    if (config.dimensions.empty()) throw ConfigError("sweep needs at least one dimension");
    if (config.seeds.empty()) throw ConfigError("sweep needs at least one seed");

    const UltrametricMatrix theoretical = theoretical_ultrametric(config.topology);
    ConvergenceSeries series;

    for (const int dimension : config.dimensions) {
        for (const std::uint64_t seed : config.seeds) {
            ConvergenceRow row;
            row.dimension = dimension;
            row.seed = seed;
            if (options.theory_only) {
                const IndexSummary summary =
                    series_indexes(theoretical, config, seed, options.threads);
                row.ultrametricity = summary.ultrametricity;
                row.isometricity = summary.isometricity;
                row.max_abs_deviation = 0.0;
            } else {
                GenerateOptions gen_options;
                gen_options.threads = options.threads;
                const PointCloud cloud =
                    generate_hierarchical_points(config.topology, dimension, seed, gen_options);
                DistanceOptions dist_options;
                dist_options.threads = options.threads;
                const DistanceMatrix empirical = distance_matrix(cloud, dist_options);
                const IndexSummary summary =
                    series_indexes(empirical, config, seed, options.threads);
                row.ultrametricity = summary.ultrametricity;
                row.isometricity = summary.isometricity;
                row.max_abs_deviation = max_abs_deviation(empirical, theoretical);
            }
            series.rows.push_back(row);
        }
    }

    if (options.write_files) {
        ensure_outputs_dir(config);
        write_series_csv(config.outputs / "series.csv", series);
    }
    return series;
}

void write_series_csv(const std::filesystem::path& path, const ConvergenceSeries& series) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open file for writing", path.string());
    out << "n,seed,U,E,max_abs_dev\n";
    for (const ConvergenceRow& row : series.rows) {
        out << row.dimension << ',' << row.seed << ',' << full(row.ultrametricity) << ','
            << full(row.isometricity) << ',' << full(row.max_abs_deviation) << '\n';
    }
    if (!out) throw IoError("write failed", path.string());
}

ConvergenceSeries read_series_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file for reading", path.string());
    std::string line;
    if (!std::getline(in, line) || line != "n,seed,U,E,max_abs_dev")
        throw IoError("missing or malformed series header", path.string());
    ConvergenceSeries series;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream stream(line);
        std::string field;
        ConvergenceRow row;
        std::getline(stream, field, ',');
        row.dimension = std::stoi(field);
        std::getline(stream, field, ',');
        row.seed = std::stoull(field);
        std::getline(stream, field, ',');
        row.ultrametricity = std::stod(field);
        std::getline(stream, field, ',');
        row.isometricity = std::stod(field);
        std::getline(stream, field, ',');
        row.max_abs_deviation = std::stod(field);
        series.rows.push_back(row);
    }
    return series;
}

}  // namespace umgen

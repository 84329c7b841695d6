// umcli: generate hierarchical Gaussian clouds, compute/validate distance
// matrices against closed-form ultrametric limits, and run the experiment
// pipelines. Exit codes: 0 success, 1 validation failure, 2 usage/config
// error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "umgen/config.hpp"
#include "umgen/distance.hpp"
#include "umgen/errors.hpp"
#include "umgen/experiments.hpp"
#include "umgen/generator.hpp"
#include "umgen/indexes.hpp"
#include "umgen/io.hpp"
#include "umgen/topology.hpp"
#include "umgen/ultrametric.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct CliState {
    std::string config_path;
    std::string input_path;
    std::string out_dir = ".";
    std::string transform_descriptor;
    std::string format = "json";
    std::uint64_t seed = 0;
    bool seed_given = false;
    int dimension = 0;
    bool dimension_given = false;
    int threads = 0;
    double tol = -1.0;  // < 0 means scale-aware default
    std::uint64_t sample_count = 0;
    bool skip_degenerate = false;
    bool allow_large = false;
    bool theory_only = false;
};

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw umgen::IoError("cannot create output directory", dir.string());
}

json violation_kind_name(umgen::MetricViolationKind kind) {
    switch (kind) {
        case umgen::MetricViolationKind::negative_entry: return "negative_entry";
        case umgen::MetricViolationKind::nonzero_diagonal: return "nonzero_diagonal";
        case umgen::MetricViolationKind::asymmetry: return "asymmetry";
        case umgen::MetricViolationKind::triangle: return "triangle";
    }
    return "unknown";
}

int cmd_generate(const CliState& state) {
    const auto config = umgen::load_config(state.config_path, false);
    std::uint64_t seed = state.seed;
    if (!state.seed_given) {
        if (config.seeds.empty())
            throw umgen::ConfigError("no --seed given and config has no seeds");
        seed = config.seeds.front();
    }
    int dimension = state.dimension;
    if (!state.dimension_given) {
        if (config.dimensions.empty())
            throw umgen::ConfigError("no --dim given and config has no dimensions");
        dimension = config.dimensions.front();
    }

    umgen::GenerateOptions options;
    options.threads = state.threads;
    const umgen::PointCloud cloud =
        umgen::generate_hierarchical_points(config.topology, dimension, seed, options);
    ensure_dir(state.out_dir);
    umgen::io::write_point_cloud(fs::path(state.out_dir) / "cloud.csv", cloud);
    std::cout << "wrote " << (fs::path(state.out_dir) / "cloud.csv").string() << " ("
              << cloud.rows() << " leaves x " << dimension << ")\n";
    return kExitOk;
}

int cmd_distances(const CliState& state) {
    const umgen::PointCloud cloud = umgen::io::read_point_cloud(state.input_path);
    umgen::DistanceOptions options;
    options.threads = state.threads;
    const umgen::DistanceMatrix m = umgen::distance_matrix(cloud, options);
    ensure_dir(state.out_dir);
    const fs::path out(state.out_dir);
    umgen::io::write_matrix(out / "matrix.csv", m, umgen::io::MatrixPrecision::full);
    umgen::io::write_matrix(out / "matrix.display.csv", m, umgen::io::MatrixPrecision::display);
    umgen::io::write_matrix_meta(out / "matrix.csv", m, "distances of " + state.input_path);
    std::cout << "wrote " << (out / "matrix.csv").string() << " (" << m.size << "x" << m.size
              << ")\n";
    return kExitOk;
}

int cmd_theory(const CliState& state) {
    const auto config = umgen::load_config(state.config_path, false);
    const umgen::UltrametricMatrix m = umgen::theoretical_ultrametric(config.topology);
    ensure_dir(state.out_dir);
    const fs::path out(state.out_dir);
    umgen::io::write_matrix(out / "theory.csv", m, umgen::io::MatrixPrecision::full);
    umgen::io::write_matrix(out / "theory.display.csv", m, umgen::io::MatrixPrecision::display);
    umgen::io::write_matrix_meta(out / "theory.csv", m, "theory");
    std::cout << "wrote " << (out / "theory.csv").string() << " (" << m.size << "x" << m.size
              << ")\n";
    return kExitOk;
}

int cmd_indexes(const CliState& state, bool out_given) {
    const umgen::DistanceMatrix m = umgen::io::read_matrix(state.input_path);
    umgen::IndexOptions options;
    options.skip_degenerate = state.skip_degenerate;
    options.allow_large = state.allow_large;
    options.threads = state.threads;
    const umgen::IndexSummary summary =
        state.sample_count > 0 ? umgen::sampled_indexes(m, state.sample_count, state.seed, options)
                               : umgen::matrix_indexes(m, options);

    if (state.format == "csv") {
        auto opt = [](const std::optional<double>& v) {
            char buf[64];
            if (!v) return std::string();
            std::snprintf(buf, sizeof(buf), "%.17g", *v);
            return std::string(buf);
        };
        std::printf("U,E,triangle_count,mode,standard_error_U,standard_error_E,seed\n");
        std::printf("%.17g,%.17g,%llu,%s,%s,%s,%s\n", summary.ultrametricity,
                    summary.isometricity,
                    static_cast<unsigned long long>(summary.triangle_count),
                    summary.mode == umgen::IndexMode::exact ? "exact" : "sampled",
                    opt(summary.standard_error_u).c_str(), opt(summary.standard_error_e).c_str(),
                    summary.seed ? std::to_string(*summary.seed).c_str() : "");
    } else {
        std::cout << umgen::io::summary_to_json(summary) << '\n';
    }
    if (out_given) {
        ensure_dir(state.out_dir);
        umgen::io::write_summary(fs::path(state.out_dir) / "summary.json", summary);
    }
    return kExitOk;
}

int cmd_verify(const CliState& state, bool out_given) {
    const umgen::DistanceMatrix m = umgen::io::read_matrix(state.input_path);
    const double tol = state.tol >= 0 ? state.tol : umgen::default_axiom_tolerance(m);

    umgen::AxiomCheckOptions axiom_options;
    axiom_options.sample_count = state.sample_count;
    axiom_options.sample_seed = state.seed;
    axiom_options.threads = state.threads;
    const umgen::MetricReport metric = umgen::check_metric_axioms(m, tol, axiom_options);

    umgen::StrongTriangleOptions strong_options;
    strong_options.sample_count = state.sample_count;
    strong_options.sample_seed = state.seed;
    strong_options.threads = state.threads;
    const umgen::StrongTriangleReport strong = umgen::check_strong_triangle(m, tol, strong_options);

    json metric_violations = json::array();
    for (const auto& v : metric.violations)
        metric_violations.push_back(json{{"kind", violation_kind_name(v.kind)},
                                         {"a", v.a},
                                         {"b", v.b},
                                         {"c", v.c},
                                         {"magnitude", v.magnitude}});
    json strong_violations = json::array();
    for (const auto& v : strong.violations)
        strong_violations.push_back(json{{"a", v.a}, {"b", v.b}, {"c", v.c},
                                         {"excess", v.excess}});
    const bool ok = metric.ok() && strong.ok();
    json report{{"tolerance", tol},
                {"metric",
                 {{"total_violations", metric.total_violations},
                  {"violations", metric_violations},
                  {"coincident_pairs", metric.coincident_pairs}}},
                {"strong_triangle",
                 {{"total_violations", strong.total_violations},
                  {"checked_triangles", strong.checked_triangles},
                  {"sampled", strong.sampled},
                  {"violations", strong_violations}}},
                {"ok", ok}};

    if (state.format == "csv") {
        std::printf("check,kind,a,b,c,magnitude\n");
        for (const auto& v : metric.violations)
            std::printf("metric,%s,%zu,%zu,%zu,%.17g\n",
                        violation_kind_name(v.kind).get<std::string>().c_str(), v.a, v.b, v.c,
                        v.magnitude);
        for (const auto& v : strong.violations)
            std::printf("strong_triangle,max_exceeds_mid,%zu,%zu,%zu,%.17g\n", v.a, v.b, v.c,
                        v.excess);
    } else {
        std::cout << report.dump() << '\n';
    }
    if (out_given) {
        ensure_dir(state.out_dir);
        std::ofstream out(fs::path(state.out_dir) / "verify.json");
        if (!out)
            throw umgen::IoError("cannot open file for writing",
                                 (fs::path(state.out_dir) / "verify.json").string());
        out << report.dump(2) << '\n';
    }
    return ok ? kExitOk : kExitValidation;
}

int cmd_dendro(const CliState& state) {
    const umgen::DistanceMatrix m = umgen::io::read_matrix(state.input_path);
    const double tol = state.tol >= 0 ? state.tol : 1e-12 * m.max_entry();
    umgen::StrongTriangleOptions options;
    options.sample_count = state.sample_count;
    options.sample_seed = state.seed;
    options.threads = state.threads;
    const umgen::Dendrogram dendrogram = umgen::recover_dendrogram(m, tol, options);
    ensure_dir(state.out_dir);
    const fs::path out(state.out_dir);
    umgen::io::write_dendrogram(out / "dendrogram.json", dendrogram);
    std::ofstream text(out / "dendrogram.txt");
    if (!text)
        throw umgen::IoError("cannot open file for writing", (out / "dendrogram.txt").string());
    text << umgen::render_dendrogram(dendrogram);
    std::cout << "wrote " << (out / "dendrogram.json").string() << " ("
              << dendrogram.merges.size() << " merges)\n";
    return kExitOk;
}

int cmd_transform(const CliState& state) {
    const umgen::DistanceMatrix m = umgen::io::read_matrix(state.input_path);
    const umgen::MonotoneTransform f = umgen::MonotoneTransform::parse(state.transform_descriptor);
    const umgen::UltrametricMatrix transformed = umgen::transform_metric(m, f);
    ensure_dir(state.out_dir);
    const fs::path out(state.out_dir);
    umgen::io::write_matrix(out / "transformed.csv", transformed,
                            umgen::io::MatrixPrecision::full);
    umgen::io::write_matrix(out / "transformed.display.csv", transformed,
                            umgen::io::MatrixPrecision::display);
    umgen::io::write_matrix_meta(out / "transformed.csv", transformed,
                                 f.to_string() + " of " + state.input_path);
    std::cout << "wrote " << (out / "transformed.csv").string() << '\n';
    return kExitOk;
}

int cmd_matrix_exp(const CliState& state, bool out_given) {
    auto config = umgen::load_config(state.config_path, true);
    if (out_given) config.outputs = state.out_dir;
    umgen::RunOptions options;
    options.threads = state.threads;
    const umgen::MatrixExperimentReport report = umgen::run_matrix_experiment(config, options);
    std::cout << "max_abs_deviation " << report.max_abs_deviation << " over "
              << report.per_seed.size() << " seed(s); outputs in " << config.outputs.string()
              << '\n';
    return kExitOk;
}

int cmd_sweep(const CliState& state, bool out_given) {
    auto config = umgen::load_config(state.config_path, true);
    if (out_given) config.outputs = state.out_dir;
    umgen::RunOptions options;
    options.threads = state.threads;
    options.theory_only = state.theory_only;
    const umgen::ConvergenceSeries series = umgen::run_convergence_sweep(config, options);
    std::cout << "wrote " << (config.outputs / "series.csv").string() << " ("
              << series.rows.size() << " rows)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochastic generation and validation of ultrametric structures in R^n"};
    app.require_subcommand(1);
    CliState state;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--threads", state.threads, "worker cap (0 = hardware)")
            ->check(CLI::NonNegativeNumber);
        return cmd;
    };

    auto* generate = add_common(app.add_subcommand("generate", "generate a point cloud CSV"));
    generate->add_option("--config", state.config_path, "config file with the topology")
        ->required();
    auto* gen_seed = generate->add_option("--seed", state.seed, "master seed");
    auto* gen_dim =
        generate->add_option("--dim", state.dimension, "space dimension n")->check(CLI::PositiveNumber);
    generate->add_option("--out", state.out_dir, "output directory");

    auto* distances =
        add_common(app.add_subcommand("distances", "distance matrix of a cloud CSV"));
    distances->add_option("cloud", state.input_path, "cloud CSV from generate")->required();
    distances->add_option("--out", state.out_dir, "output directory");

    auto* theory =
        add_common(app.add_subcommand("theory", "closed-form limiting matrix of a topology"));
    theory->add_option("--config", state.config_path, "config file with the topology")
        ->required();
    theory->add_option("--out", state.out_dir, "output directory");

    auto* indexes =
        add_common(app.add_subcommand("indexes", "ultrametricity/isometricity of a matrix"));
    indexes->add_option("matrix", state.input_path, "matrix CSV")->required();
    auto* idx_out = indexes->add_option("--out", state.out_dir, "directory for summary.json");
    indexes->add_option("--sample-count", state.sample_count,
                        "estimate from this many sampled triangles instead of exact enumeration")
        ->check(CLI::NonNegativeNumber);
    indexes->add_option("--seed", state.seed, "sampling seed");
    indexes->add_option("--format", state.format, "summary format")
        ->check(CLI::IsMember({"json", "csv"}));
    indexes->add_flag("--skip-degenerate", state.skip_degenerate,
                      "count and skip triangles with non-positive sides");
    indexes->add_flag("--allow-large", state.allow_large,
                      "lift the exact-enumeration size cap");

    auto* verify = add_common(
        app.add_subcommand("verify", "check metric axioms and the strong triangle inequality"));
    verify->add_option("matrix", state.input_path, "matrix CSV")->required();
    verify->add_option("--tol", state.tol, "tolerance (default: 1e-9 x max entry)");
    verify->add_option("--sample-count", state.sample_count,
                       "sampled triangle checks for matrices above the exact cap")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--seed", state.seed, "sampling seed");
    verify->add_option("--format", state.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
    auto* verify_out = verify->add_option("--out", state.out_dir, "directory for verify.json");

    auto* dendro = add_common(
        app.add_subcommand("dendro", "recover the dendrogram of an ultrametric matrix"));
    dendro->add_option("matrix", state.input_path, "ultrametric matrix CSV")->required();
    dendro->add_option("--tol", state.tol, "tolerance (default: 1e-12 x max entry)");
    dendro->add_option("--sample-count", state.sample_count,
                       "sampled ultrametricity check above the exact cap")
        ->check(CLI::NonNegativeNumber);
    dendro->add_option("--out", state.out_dir, "output directory");

    auto* transform =
        add_common(app.add_subcommand("transform", "apply a monotone map entrywise"));
    transform->add_option("matrix", state.input_path, "matrix CSV")->required();
    transform
        ->add_option("--transform", state.transform_descriptor,
                     "descriptor: identity | pow:A | scale:C | cap:C, comma-composed")
        ->required();
    transform->add_option("--out", state.out_dir, "output directory");

    auto* matrix_exp = add_common(app.add_subcommand(
        "matrix-exp", "empirical vs theoretical matrices at one dimension"));
    matrix_exp->add_option("--config", state.config_path, "experiment config")->required();
    auto* mexp_out =
        matrix_exp->add_option("--out", state.out_dir, "override the config outputs directory");

    auto* sweep =
        add_common(app.add_subcommand("sweep", "U/E convergence series over dimensions"));
    sweep->add_option("--config", state.config_path, "experiment config")->required();
    auto* sweep_out =
        sweep->add_option("--out", state.out_dir, "override the config outputs directory");
    sweep->add_flag("--theory-only", state.theory_only,
                    "index the theoretical matrix, bypassing generation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    state.seed_given = gen_seed->count() > 0;
    state.dimension_given = gen_dim->count() > 0;

    try {
        if (app.got_subcommand(generate)) return cmd_generate(state);
        if (app.got_subcommand(distances)) return cmd_distances(state);
        if (app.got_subcommand(theory)) return cmd_theory(state);
        if (app.got_subcommand(indexes)) return cmd_indexes(state, idx_out->count() > 0);
        if (app.got_subcommand(verify)) return cmd_verify(state, verify_out->count() > 0);
        if (app.got_subcommand(dendro)) return cmd_dendro(state);
        if (app.got_subcommand(transform)) return cmd_transform(state);
        if (app.got_subcommand(matrix_exp)) return cmd_matrix_exp(state, mexp_out->count() > 0);
        if (app.got_subcommand(sweep)) return cmd_sweep(state, sweep_out->count() > 0);
    } catch (const umgen::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const umgen::IoError& e) {
        std::cerr << "file error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const umgen::UnsupportedTransformError& e) {
        std::cerr << "transform error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const umgen::NotUltrametricError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const umgen::DegenerateTriangleError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const umgen::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitUsage;
}

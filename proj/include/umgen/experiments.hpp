#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "umgen/config.hpp"
#include "umgen/distance.hpp"

namespace umgen {

/// Statistics for one group of matrix entries sharing a theoretical value.
struct ValueClassStats {
    double theoretical = 0.0;
    std::size_t pair_count = 0;   // unordered off-diagonal pairs in the class
    double mean_empirical = 0.0;
    double max_abs_deviation = 0.0;
};

struct MatrixExperimentSeedResult {
    std::uint64_t seed = 0;
    double max_abs_deviation = 0.0;
    std::vector<ValueClassStats> classes;
};

struct MatrixExperimentReport {
    TreeTopology topology;
    int dimension = 0;
    std::vector<MatrixExperimentSeedResult> per_seed;
    double max_abs_deviation = 0.0;  // max over seeds
};

struct RunOptions {
    int threads = 0;
    /// Sweep only: compute indexes of the theoretical matrix instead of
    /// generating clouds.
    bool theory_only = false;
    /// Write CSV/JSON outputs into config.outputs (directories are created).
    bool write_files = true;
};

/// Generates a cloud per seed at the single configured dimension, writes the
/// empirical and theoretical matrices (6-decimal display and full precision),
/// and reports the max absolute deviation plus per-value-class statistics.
MatrixExperimentReport run_matrix_experiment(const ExperimentConfig& config,
                                             const RunOptions& options = {});

struct ConvergenceRow {
    int dimension = 0;
    std::uint64_t seed = 0;
    double ultrametricity = 0.0;   // exact U of the empirical matrix
    double isometricity = 0.0;     // exact E
    double max_abs_deviation = 0.0;
};

/// One row per (dimension, seed); written as CSV `n,seed,U,E,max_abs_dev`.
struct ConvergenceSeries {
    std::vector<ConvergenceRow> rows;
};

ConvergenceSeries run_convergence_sweep(const ExperimentConfig& config,
                                        const RunOptions& options = {});

void write_series_csv(const std::filesystem::path& path, const ConvergenceSeries& series);
ConvergenceSeries read_series_csv(const std::filesystem::path& path);

}  // namespace umgen

#pragma once

#include <filesystem>
#include <string>

#include "umgen/distance.hpp"
#include "umgen/generator.hpp"
#include "umgen/indexes.hpp"
#include "umgen/ultrametric.hpp"

namespace umgen::io {

/// Writes header `leaf_linear,a_1,...,a_N,x_1,...,x_n` plus one row per leaf
/// (17 significant digits, exact decimal round-trip), and a `<stem>.meta.json`
/// sidecar carrying topology, seed and dimension.
void write_point_cloud(const std::filesystem::path& csv_path, const PointCloud& cloud);

/// Reads a cloud CSV written by write_point_cloud; the sidecar must be
/// present next to it.
PointCloud read_point_cloud(const std::filesystem::path& csv_path);

enum class MatrixPrecision {
    display,  // 6-decimal fixed, matching printed matrices
    full,     // 17 significant digits, exact round-trip
};

/// Bare N x N comma-separated values, no header.
void write_matrix(const std::filesystem::path& csv_path, const DistanceMatrix& m,
                  MatrixPrecision precision);

/// Provenance sidecar (labels plus arbitrary metadata) for a matrix CSV.
void write_matrix_meta(const std::filesystem::path& csv_path, const DistanceMatrix& m,
                       const std::string& source);

/// Reads a bare matrix CSV; labels are restored from `<stem>.meta.json`
/// when that file exists.
DistanceMatrix read_matrix(const std::filesystem::path& csv_path);

/// Canonical single-line JSON for an index summary:
/// {U, E, triangle_count, mode, standard_error?, seed?}. Byte-stable for
/// equal summaries.
std::string summary_to_json(const IndexSummary& summary);
void write_summary(const std::filesystem::path& json_path, const IndexSummary& summary);

void write_dendrogram(const std::filesystem::path& json_path, const Dendrogram& dendrogram);

/// Path of the metadata sidecar belonging to a CSV file.
std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

}  // namespace umgen::io

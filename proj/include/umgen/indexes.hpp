#pragma once

#include <cstdint>
#include <optional>

#include "umgen/distance.hpp"

namespace umgen {

/// Per-triangle indexes over the sorted side lengths (min, mid, max):
/// ultrametricity I = 1 - mid/max (0 exactly on isosceles-with-short-base
/// triangles), isometricity J = 1 - min/max (0 exactly on equilateral ones).
struct TriangleIndexes {
    double ultrametricity = 0.0;  // I, in [0, 1/2] on metric triples
    double isometricity = 0.0;    // J, in [0, 1]
};

/// Throws DegenerateTriangleError when any side is <= 0.
TriangleIndexes triangle_indexes(double d_ab, double d_bc, double d_ca);

enum class IndexMode { exact, sampled };

struct IndexSummary {
    double ultrametricity = 0.0;  // U(M)
    double isometricity = 0.0;    // E(M)
    std::uint64_t triangle_count = 0;
    IndexMode mode = IndexMode::exact;
    std::optional<double> standard_error_u;  // sampled mode only
    std::optional<double> standard_error_e;  // sampled mode only
    std::optional<std::uint64_t> seed;       // sampled mode only
    std::uint64_t skipped_triangles = 0;     // only with skip_degenerate
};

struct IndexOptions {
    /// Count triangles with a non-positive side instead of failing; intended
    /// for noisy empirical data.
    bool skip_degenerate = false;
    /// Exact enumeration is cubic; matrices larger than this are refused
    /// unless allow_large is set.
    std::size_t max_exact_points = 2000;
    bool allow_large = false;
    int threads = 0;
};

/// Exact U(M) and E(M): means of I and J over all C(N_pts, 3) unordered
/// triplets. Accumulation is chunked at fixed boundaries and merged in chunk
/// order, so results are identical at any worker count.
IndexSummary matrix_indexes(const DistanceMatrix& m, const IndexOptions& options = {});

/// Same computation as matrix_indexes; named entry points for the two
/// averages.
IndexSummary ultrametricity_index(const DistanceMatrix& m, const IndexOptions& options = {});
IndexSummary isometricity_index(const DistanceMatrix& m, const IndexOptions& options = {});

/// Unbiased estimates of U and E from `sample_count` unordered triplets drawn
/// uniformly without replacement, with standard errors. Falls back to exact
/// mode when sample_count covers all triangles.
IndexSummary sampled_indexes(const DistanceMatrix& m, std::uint64_t sample_count,
                             std::uint64_t seed, const IndexOptions& options = {});

}  // namespace umgen

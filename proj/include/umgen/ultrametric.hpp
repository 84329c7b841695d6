#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "umgen/distance.hpp"
#include "umgen/topology.hpp"

namespace umgen {

/// Same representation as DistanceMatrix, with the strong triangle
/// inequality holding (within the validator tolerance) as an extra invariant.
using UltrametricMatrix = DistanceMatrix;

/// Limiting distance of two independent coordinate distributions:
/// sqrt(sigma_a^2 + sigma_b^2 + (mean_a - mean_b)^2).
double two_point_limit(double mean_a, double sigma_a, double mean_b, double sigma_b);

/// Closed-form limiting matrix of the topology: entry for leaves (a, b) is 0
/// when a == b, else sqrt(2) * sqrt(sum of sigma_k^2 from the first
/// divergence level to N. Passes check_strong_triangle exactly.
UltrametricMatrix theoretical_ultrametric(const TreeTopology& topology,
                                          std::size_t max_entries = 100'000'000);

struct StrongTriangleViolation {
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t c = 0;
    double excess = 0.0;  // max side minus the larger of the other two
};

struct StrongTriangleReport {
    std::vector<StrongTriangleViolation> violations;  // first `record_cap` found
    std::size_t total_violations = 0;
    StrongTriangleViolation worst;  // meaningful when total_violations > 0
    std::uint64_t checked_triangles = 0;
    bool sampled = false;

    bool ok() const { return total_violations == 0; }
};

struct StrongTriangleOptions {
    std::size_t record_cap = 1000;
    /// Exact enumeration is cubic; inputs larger than this are refused
    /// unless sample_count > 0, in which case that many random triplets
    /// are checked instead.
    std::size_t max_exact_points = 1000;
    std::uint64_t sample_count = 0;
    std::uint64_t sample_seed = 0;
    int threads = 0;
};

/// Lists every triplet whose largest side exceeds the larger of the other
/// two by more than `tol`; an empty report means ultrametric-within-tolerance.
StrongTriangleReport check_strong_triangle(const DistanceMatrix& m, double tol,
                                           const StrongTriangleOptions& options = {});

/// Monotone map from the closed family of Theorem-preserving transforms:
/// powers x^alpha (alpha > 0), scalings c*x (c > 0), saturations min(x, c)
/// (c > 0), and compositions of these, applied in sequence. All members are
/// continuous, nonnegative, nondecreasing and fix 0.
struct MonotoneTransform {
    struct Step {
        enum class Kind { power, scale, saturate } kind;
        double value;
    };
    std::vector<Step> steps;  // empty = identity

    double operator()(double x) const;

    /// Parses descriptors like "identity", "pow:2", "scale:0.5", "cap:1.5",
    /// or compositions "pow:2,cap:1.5" (applied left to right). Throws
    /// UnsupportedTransformError for anything outside the family.
    static MonotoneTransform parse(std::string_view descriptor);

    std::string to_string() const;
};

/// Entrywise application of the transform. With an ultrametric input the
/// output is again ultrametric.
UltrametricMatrix transform_metric(const UltrametricMatrix& m, const MonotoneTransform& f);

/// One agglomeration step: clusters `left` and `right` join at `height`.
/// Leaves carry ids 0..n-1; the merge at position m creates cluster n+m.
struct Merge {
    std::size_t left = 0;
    std::size_t right = 0;
    double height = 0.0;
};

struct Dendrogram {
    std::size_t leaf_count = 0;
    std::vector<Merge> merges;  // exactly leaf_count - 1, heights nondecreasing
};

/// Single-linkage agglomeration, exact on ultrametric input. The input must
/// pass check_strong_triangle at `tol`; otherwise NotUltrametricError is
/// thrown carrying the worst violation. Equal-height merges are processed in
/// ascending cluster-id order.
Dendrogram recover_dendrogram(const UltrametricMatrix& m, double tol,
                              const StrongTriangleOptions& options = {});

/// Matrix of merge heights at which leaf pairs first join; on input
/// recovered from an ultrametric matrix this reproduces that matrix.
DistanceMatrix cophenetic_matrix(const Dendrogram& dendrogram);

/// Indented-text rendering for human inspection.
std::string render_dendrogram(const Dendrogram& dendrogram);

}  // namespace umgen

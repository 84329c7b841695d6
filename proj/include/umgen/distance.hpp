#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "umgen/generator.hpp"
#include "umgen/topology.hpp"

namespace umgen {

/// Dense symmetric matrix of pairwise distances with zero diagonal.
/// `labels`, when nonempty, carries the leaf path of each row.
struct DistanceMatrix {
    std::size_t size = 0;
    std::vector<double> entries;   // size x size, row-major
    std::vector<LeafPath> labels;  // empty, or one path per row

    double at(std::size_t a, std::size_t b) const { return entries[a * size + b]; }
    double& at(std::size_t a, std::size_t b) { return entries[a * size + b]; }

    double max_entry() const;
};

/// Dimension-normalized Euclidean distance (1/sqrt(n)) * sqrt(sum (x-y)^2).
/// Zero iff x == y exactly. Accumulation is pairwise, so the result does not
/// depend on how callers partition work.
double normalized_distance(std::span<const double> x, std::span<const double> y);

struct DistanceOptions {
    /// Budget on size^2 matrix entries; exceeding it raises CapacityError.
    std::size_t max_entries = 100'000'000;
    int threads = 0;
};

/// Full pairwise matrix of normalized distances between cloud rows, ordered
/// by leaf linear index; labels are filled from the topology.
DistanceMatrix distance_matrix(const PointCloud& cloud, const DistanceOptions& options = {});

enum class MetricViolationKind {
    negative_entry,    // axiom (1), also non-finite values
    nonzero_diagonal,  // axiom (2), d_aa != 0
    asymmetry,         // axiom (3)
    triangle,          // axiom (4)
};

struct MetricViolation {
    MetricViolationKind kind;
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t c = 0;  // used by triangle violations only
    double magnitude = 0.0;
};

struct MetricReport {
    std::vector<MetricViolation> violations;  // first `record_cap` occurrences
    std::size_t total_violations = 0;
    /// Informational: off-diagonal entries equal to zero within tolerance.
    /// Distinct random points may collide in principle, so these are not
    /// counted as violations.
    std::vector<std::pair<std::size_t, std::size_t>> coincident_pairs;

    bool ok() const { return total_violations == 0; }
};

struct AxiomCheckOptions {
    std::size_t record_cap = 1000;
    /// Triangle enumeration is cubic; inputs larger than this are refused
    /// unless sample_count > 0, in which case that many random triplets are
    /// checked instead.
    std::size_t max_exact_points = 1000;
    std::uint64_t sample_count = 0;
    std::uint64_t sample_seed = 0;
    int threads = 0;
};

/// Checks nonnegativity, zero diagonal, symmetry and the ordinary triangle
/// inequality, all within `tol`; an empty report means metric-within-tolerance.
MetricReport check_metric_axioms(const DistanceMatrix& m, double tol,
                                 const AxiomCheckOptions& options = {});

/// Scale-aware default tolerance: 1e-9 times the largest entry.
double default_axiom_tolerance(const DistanceMatrix& m);

}  // namespace umgen

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "umgen/topology.hpp"

namespace umgen {

/// Leaf points of one generated hierarchy, row r = coordinates of the leaf
/// with linear index r. Regeneration with the same (topology, dimension,
/// seed) reproduces the cloud bit-identically at any worker count.
struct PointCloud {
    TreeTopology topology;
    int dimension = 0;
    std::uint64_t seed = 0;
    std::vector<double> points;  // leaf_count x dimension, row-major

    /// Internal node coordinates for levels 1..N-1, each flattened
    /// (p_1*...*p_k) x dimension; empty unless requested at generation.
    std::vector<std::vector<double>> intermediate_levels;

    std::size_t rows() const { return topology.leaf_count(); }

    std::span<const double> row(std::size_t r) const {
        const auto n = static_cast<std::size_t>(dimension);
        return {points.data() + r * n, n};
    }
};

struct GenerateOptions {
    bool keep_intermediate = false;
    /// Budget on leaf_count * dimension; exceeding it raises CapacityError.
    std::size_t max_elements = 100'000'000;
    int threads = 0;  // 0 = hardware default
};

/// Nested Gaussian sampling, level by level: level-1 nodes draw each
/// coordinate from N(base_mean, sigma_1); a level-k node draws coordinate i
/// from N(parent_i, sigma_k). Every node consumes its own seed-derived
/// stream, so outputs are independent of scheduling.
PointCloud generate_hierarchical_points(const TreeTopology& topology, int dimension,
                                        std::uint64_t seed,
                                        const GenerateOptions& options = {});

}  // namespace umgen

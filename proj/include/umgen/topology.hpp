#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace umgen {

/// Leaf (or node-prefix) address in the tree: components a_k, 1-based.
using LeafPath = std::vector<int>;

/// N-level branching/variance specification of the target ultrametric space.
/// Level k of the tree branches p_k ways and adds Gaussian noise with
/// standard deviation sigma_k; base_mean shifts every coordinate.
struct TreeTopology {
    std::vector<int> branching;    // p_1 .. p_N, each >= 1
    std::vector<double> sigmas;    // sigma_1 .. sigma_N, each > 0
    double base_mean = 0.0;

    int levels() const { return static_cast<int>(branching.size()); }
    std::size_t leaf_count() const;

    /// Number of tree nodes excluding the root: sum over k of p_1*...*p_k.
    std::size_t node_count() const;

    /// Throws std::invalid_argument when any structural invariant fails.
    void validate() const;
};

struct TopologyClass {
    bool homogeneous = false;
    bool self_similar = false;
};

/// Row-major linear index of a leaf path; siblings are contiguous.
std::size_t linearize(const LeafPath& path, const TreeTopology& topology);

/// Inverse of linearize.
LeafPath delinearize(std::size_t linear, const TreeTopology& topology);

/// Smallest level (1-based) at which the two paths differ, or nullopt when
/// the paths are identical. Throws std::invalid_argument on length mismatch.
std::optional<int> first_divergence_level(const LeafPath& a, const LeafPath& b);

/// Every TreeTopology is homogeneous (branching depends only on level);
/// it is self-similar iff all branching numbers coincide.
TopologyClass classify_topology(const TreeTopology& topology);

}  // namespace umgen

#include "umgen/topology.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace umgen {

namespace {

std::size_t checked_product(const std::vector<int>& factors, int upto) {
    std::size_t product = 1;
    for (int k = 0; k < upto; ++k) {
        const auto p = static_cast<std::size_t>(factors[static_cast<std::size_t>(k)]);
        if (product > (static_cast<std::size_t>(-1) / p))
            throw std::invalid_argument("topology leaf count overflows");
        product *= p;
    }
    return product;
}

}  // namespace

std::size_t TreeTopology::leaf_count() const {
    return checked_product(branching, levels());
}

std::size_t TreeTopology::node_count() const {
    std::size_t total = 0;
    std::size_t level_count = 1;
    for (const int p : branching) {
        level_count *= static_cast<std::size_t>(p);
        total += level_count;
    }
    return total;
}

void TreeTopology::validate() const {
    if (branching.empty())
        throw std::invalid_argument("topology must have at least one level");
    if (branching.size() != sigmas.size())
        throw std::invalid_argument("branching and sigmas must have equal length");
    for (std::size_t k = 0; k < branching.size(); ++k) {
        if (branching[k] < 1)
            throw std::invalid_argument("branching number p_" + std::to_string(k + 1) +
                                        " must be >= 1");
        if (!(sigmas[k] > 0.0) || !std::isfinite(sigmas[k]))
            throw std::invalid_argument("sigma_" + std::to_string(k + 1) +
                                        " must be a positive finite real");
    }
    if (!std::isfinite(base_mean))
        throw std::invalid_argument("base_mean must be finite");
    checked_product(branching, levels());
}

std::size_t linearize(const LeafPath& path, const TreeTopology& topology) {
    if (static_cast<int>(path.size()) != topology.levels())
        throw std::invalid_argument("path length does not match topology levels");
    std::size_t linear = 0;
    for (std::size_t k = 0; k < path.size(); ++k) {
        const int p_k = topology.branching[k];
        if (path[k] < 1 || path[k] > p_k)
            throw std::invalid_argument("path component a_" + std::to_string(k + 1) +
                                        " out of range [1, " + std::to_string(p_k) + "]");
        linear = linear * static_cast<std::size_t>(p_k) +
                 static_cast<std::size_t>(path[k] - 1);
    }
    return linear;
}

LeafPath delinearize(std::size_t linear, const TreeTopology& topology) {
    if (linear >= topology.leaf_count())
        throw std::invalid_argument("linear index out of range");
    LeafPath path(static_cast<std::size_t>(topology.levels()));
    for (std::size_t k = path.size(); k-- > 0;) {
        const auto p_k = static_cast<std::size_t>(topology.branching[k]);
        path[k] = static_cast<int>(linear % p_k) + 1;
        linear /= p_k;
    }
    return path;
}

std::optional<int> first_divergence_level(const LeafPath& a, const LeafPath& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("paths have mismatched lengths");
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] != b[k]) return static_cast<int>(k) + 1;
    }
    return std::nullopt;
}

TopologyClass classify_topology(const TreeTopology& topology) {
    topology.validate();
    TopologyClass cls;
    cls.homogeneous = true;
    cls.self_similar = true;
    for (const int p : topology.branching) {
        if (p != topology.branching.front()) {
            cls.self_similar = false;
            break;
        }
    }
    return cls;
}

}  // namespace umgen

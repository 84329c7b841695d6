#include "umgen/generator.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "umgen/errors.hpp"
#include "umgen/parallel.hpp"
#include "umgen/rng.hpp"

namespace umgen {

namespace {

// Path prefix (a_1..a_k) of the level-k node with row-major index `node`.
LeafPath node_path(std::size_t node, const TreeTopology& topology, int level) {
    LeafPath path(static_cast<std::size_t>(level));
    for (std::size_t k = path.size(); k-- > 0;) {
        const auto p_k = static_cast<std::size_t>(topology.branching[k]);
        path[k] = static_cast<int>(node % p_k) + 1;
        node /= p_k;
    }
    return path;
}

}  // namespace

PointCloud generate_hierarchical_points(const TreeTopology& topology, int dimension,
                                        std::uint64_t seed,
                                        const GenerateOptions& options) {
    topology.validate();
    if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");

    const auto dim = static_cast<std::size_t>(dimension);
    const std::size_t leaves = topology.leaf_count();
    if (leaves > options.max_elements / dim)
        throw CapacityError("cloud of " + std::to_string(leaves) + " x " +
                            std::to_string(dimension) + " exceeds the element budget of " +
                            std::to_string(options.max_elements));

    PointCloud cloud;
    cloud.topology = topology;
    cloud.dimension = dimension;
    cloud.seed = seed;

    // The cascade runs in centered coordinates (mean 0); base_mean is added
    // once per stored value, which makes translation by base_mean exact.
    const double shift = topology.base_mean;
    const int n_levels = topology.levels();
    std::vector<double> parent_coords;
    std::vector<double> level_coords;
    std::size_t level_nodes = 1;

    for (int level = 1; level <= n_levels; ++level) {
        level_nodes *= static_cast<std::size_t>(topology.branching[level - 1]);
        const double sigma = topology.sigmas[static_cast<std::size_t>(level - 1)];
        level_coords.assign(level_nodes * dim, 0.0);

        const std::size_t grain = std::max<std::size_t>(1, 65536 / dim);
        parallel::for_chunks(
            level_nodes, grain, options.threads,
            [&](std::size_t, std::size_t begin, std::size_t end) {
                const auto p_k = static_cast<std::size_t>(topology.branching[level - 1]);
                for (std::size_t node = begin; node < end; ++node) {
                    rng::NormalStream stream(
                        rng::derive_stream_seed({seed, node_path(node, topology, level)}));
                    double* out = level_coords.data() + node * dim;
                    if (level == 1) {
                        for (std::size_t i = 0; i < dim; ++i) out[i] = sigma * stream.next();
                    } else {
                        const double* parent = parent_coords.data() + (node / p_k) * dim;
                        for (std::size_t i = 0; i < dim; ++i)
                            out[i] = parent[i] + sigma * stream.next();
                    }
                }
            });

        if (level < n_levels) {
            if (options.keep_intermediate) {
                std::vector<double> stored(level_coords.size());
                for (std::size_t i = 0; i < stored.size(); ++i)
                    stored[i] = shift + level_coords[i];
                cloud.intermediate_levels.push_back(std::move(stored));
            }
            parent_coords = std::move(level_coords);
            level_coords.clear();
        }
    }

    cloud.points.resize(level_coords.size());
    for (std::size_t i = 0; i < level_coords.size(); ++i)
        cloud.points[i] = shift + level_coords[i];
    return cloud;
}

}  // namespace umgen

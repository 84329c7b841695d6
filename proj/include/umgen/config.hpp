#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "umgen/indexes.hpp"
#include "umgen/topology.hpp"

namespace umgen {

/// Configuration for the experiment runners and topology-driven commands.
/// Parsed strictly: unknown keys are errors.
struct ExperimentConfig {
    TreeTopology topology;
    std::vector<int> dimensions;      // ascending, each >= 1
    std::vector<std::uint64_t> seeds;
    std::filesystem::path outputs = ".";
    IndexMode index_mode = IndexMode::exact;
    std::uint64_t sample_count = 0;  // required when index_mode == sampled
};

/// Loads a JSON config. With `require_experiment`, `dimensions` and `seeds`
/// must be present and nonempty; topology-only consumers may omit them.
/// Throws ConfigError on malformed content, IoError on unreadable files.
ExperimentConfig load_config(const std::filesystem::path& path, bool require_experiment);

}  // namespace umgen

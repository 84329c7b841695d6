#include "umgen/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

#include "umgen/errors.hpp"

namespace umgen {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, const std::set<std::string>& known,
                         const std::string& where) {
    for (const auto& [key, value] : object.items()) {
        if (!known.contains(key))
            throw ConfigError("unknown key '" + key + "' in " + where +
                              " (strict parsing; check for typos)");
    }
}

}  // namespace

ExperimentConfig load_config(const std::filesystem::path& path, bool require_experiment) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file", path.string());
    json root;
    try {
        in >> root;
    } catch (const json::exception& e) {
        throw ConfigError("config is not valid JSON (" + path.string() + "): " + e.what());
    }

    ExperimentConfig config;
    try {
        if (!root.is_object()) throw ConfigError("config root must be a JSON object");
        reject_unknown_keys(root, {"topology", "dimensions", "seeds", "outputs", "index_mode",
                                   "sample_count"},
                            "config root");
        if (!root.contains("topology")) throw ConfigError("config is missing 'topology'");
        const json& topo = root.at("topology");
        if (!topo.is_object()) throw ConfigError("'topology' must be an object");
        reject_unknown_keys(topo, {"levels", "branching", "sigmas", "base_mean"}, "topology");
        if (!topo.contains("levels") || !topo.contains("branching") || !topo.contains("sigmas"))
            throw ConfigError("topology needs 'levels', 'branching' and 'sigmas'");
        config.topology.branching = topo.at("branching").get<std::vector<int>>();
        config.topology.sigmas = topo.at("sigmas").get<std::vector<double>>();
        if (topo.contains("base_mean"))
            config.topology.base_mean = topo.at("base_mean").get<double>();
        const int levels = topo.at("levels").get<int>();
        if (levels != static_cast<int>(config.topology.branching.size()))
            throw ConfigError("'levels' (" + std::to_string(levels) +
                              ") does not match the length of 'branching'");

        if (root.contains("dimensions"))
            config.dimensions = root.at("dimensions").get<std::vector<int>>();
        if (root.contains("seeds"))
            config.seeds = root.at("seeds").get<std::vector<std::uint64_t>>();
        if (root.contains("outputs"))
            config.outputs = root.at("outputs").get<std::string>();
        if (root.contains("index_mode")) {
            const std::string mode = root.at("index_mode").get<std::string>();
            if (mode == "exact")
                config.index_mode = IndexMode::exact;
            else if (mode == "sampled")
                config.index_mode = IndexMode::sampled;
            else
                throw ConfigError("index_mode must be 'exact' or 'sampled', got '" + mode + "'");
        }
        if (root.contains("sample_count"))
            config.sample_count = root.at("sample_count").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw ConfigError("malformed config (" + path.string() + "): " + e.what());
    }

    try {
        config.topology.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("invalid topology in " + path.string() + ": " + e.what());
    }

    if (config.index_mode == IndexMode::sampled && config.sample_count < 100)
        throw ConfigError("sampled index_mode needs sample_count >= 100");
    if (config.index_mode == IndexMode::exact && config.sample_count != 0)
        throw ConfigError("sample_count is only meaningful with index_mode 'sampled'");

    for (const int n : config.dimensions)
        if (n < 1) throw ConfigError("dimensions must all be >= 1");
    if (!std::is_sorted(config.dimensions.begin(), config.dimensions.end()))
        throw ConfigError("dimensions must be listed in ascending order");

    if (require_experiment) {
        if (config.dimensions.empty())
            throw ConfigError("config needs a nonempty 'dimensions' list");
        if (config.seeds.empty()) throw ConfigError("config needs a nonempty 'seeds' list");
    }
    return config;
}

}  // namespace umgen

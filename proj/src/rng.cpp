#include "umgen/rng.hpp"

#include <cmath>
#include <numbers>

namespace umgen::rng {

std::uint64_t derive_stream_seed(const SeedPath& seed_path) {
    // Keyed sponge over the path: absorb the depth first so that a path and
    // its prefixes land in different subspaces, then fold each component.
    std::uint64_t h = mix64(seed_path.master + 0x9E3779B97F4A7C15ull);
    h = mix64(h ^ static_cast<std::uint64_t>(seed_path.node_path.size()));
    for (const int component : seed_path.node_path) {
        h = mix64(h ^ (static_cast<std::uint64_t>(component) * 0x9E3779B97F4A7C15ull));
    }
    return h;
}

double NormalStream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

}  // namespace umgen::rng

#pragma once

#include <cstdint>
#include <vector>

namespace umgen::rng {

/// splitmix64 finalizer (Vigna); bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Identifies one node of the hierarchy: the master seed plus the node's
/// path prefix (a_1, ..., a_k), components 1-based.
struct SeedPath {
    std::uint64_t master = 0;
    std::vector<int> node_path;
};

/// Deterministic, order-independent stream seed for a node. Depends only on
/// (master, path), so generation order and thread scheduling cannot leak in.
std::uint64_t derive_stream_seed(const SeedPath& seed_path);

/// splitmix64-backed stream of standard normal variates (Box-Muller).
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : state_(seed) {}

    /// Next uniform draw in (0, 1].
    double next_uniform() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = mix64(z);
        return static_cast<double>((z >> 11) + 1) * 0x1.0p-53;
    }

    /// Next standard normal draw.
    double next();

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace umgen::rng

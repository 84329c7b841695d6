#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace umgen::detail {

inline std::uint64_t pair_count(std::uint64_t n) { return n * (n - 1) / 2; }

inline std::uint64_t triple_count(std::uint64_t n) {
    if (n < 3) return 0;
    return n * (n - 1) / 2 * (n - 2) / 3;
}

/// Unordered triplet a < b < c enumerated in lexicographic order.
struct Triple {
    std::size_t a = 0;
    std::size_t b = 1;
    std::size_t c = 2;

    void advance(std::size_t n) {
        if (++c < n) return;
        if (++b < n - 1) {
            c = b + 1;
            return;
        }
        ++a;
        b = a + 1;
        c = b + 1;
    }
};

/// Lexicographic rank -> triple, for n points.
Triple triple_at(std::uint64_t rank, std::size_t n);

/// Unordered pair a < b at lexicographic `rank` over n points.
std::pair<std::size_t, std::size_t> pair_at(std::uint64_t rank, std::size_t n);

/// Floyd's algorithm: k distinct values uniformly drawn from [0, total),
/// returned sorted ascending. Deterministic for a given seed.
std::vector<std::uint64_t> sample_distinct(std::uint64_t total, std::uint64_t k,
                                           std::uint64_t seed);

}  // namespace umgen::detail

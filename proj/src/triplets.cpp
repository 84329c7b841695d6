#include "umgen/detail/triplets.hpp"

#include <algorithm>
#include <unordered_set>

#include "umgen/rng.hpp"

namespace umgen::detail {

namespace {

// Largest v in [lo, hi] with f(v) <= target.
template <typename F>
std::uint64_t bisect_last(std::uint64_t lo, std::uint64_t hi, std::uint64_t target, F f) {
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (f(mid) <= target)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

class Splitmix64 {
public:
    explicit Splitmix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return rng::mix64(state_ += 0x9E3779B97F4A7C15ull); }

    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (~bound + 1) % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace

Triple triple_at(std::uint64_t rank, std::size_t n) {
    const std::uint64_t total = triple_count(n);
    // Triples with first index < a: C(n,3) - C(n-a,3).
    const std::uint64_t a = bisect_last(0, static_cast<std::uint64_t>(n) - 3, rank,
                                        [&](std::uint64_t v) {
                                            return total - triple_count(
                                                               static_cast<std::uint64_t>(n) - v);
                                        });
    rank -= total - triple_count(static_cast<std::uint64_t>(n) - a);
    const std::uint64_t m = static_cast<std::uint64_t>(n) - 1 - a;  // choices after a
    // Pairs with second index offset < b_off: C(m,2) - C(m-b_off,2).
    const std::uint64_t pairs = pair_count(m);
    const std::uint64_t b_off = bisect_last(0, m - 2, rank, [&](std::uint64_t v) {
        return pairs - pair_count(m - v);
    });
    rank -= pairs - pair_count(m - b_off);
    Triple t;
    t.a = static_cast<std::size_t>(a);
    t.b = t.a + 1 + static_cast<std::size_t>(b_off);
    t.c = t.b + 1 + static_cast<std::size_t>(rank);
    return t;
}

std::pair<std::size_t, std::size_t> pair_at(std::uint64_t rank, std::size_t n) {
    const std::uint64_t total = pair_count(n);
    const std::uint64_t a = bisect_last(0, static_cast<std::uint64_t>(n) - 2, rank,
                                        [&](std::uint64_t v) {
                                            return total - pair_count(
                                                               static_cast<std::uint64_t>(n) - v);
                                        });
    rank -= total - pair_count(static_cast<std::uint64_t>(n) - a);
    return {static_cast<std::size_t>(a), static_cast<std::size_t>(a + 1 + rank)};
}

std::vector<std::uint64_t> sample_distinct(std::uint64_t total, std::uint64_t k,
                                           std::uint64_t seed) {
    Splitmix64 stream(seed);
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(k) * 2);
    for (std::uint64_t j = total - k; j < total; ++j) {
        const std::uint64_t r = stream.next_below(j + 1);
        if (!chosen.insert(r).second) chosen.insert(j);
    }
    std::vector<std::uint64_t> out(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace umgen::detail

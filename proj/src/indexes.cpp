#include "umgen/indexes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "umgen/detail/triplets.hpp"
#include "umgen/errors.hpp"
#include "umgen/parallel.hpp"

namespace umgen {

TriangleIndexes triangle_indexes(double d_ab, double d_bc, double d_ca) {
    if (!(d_ab > 0) || !(d_bc > 0) || !(d_ca > 0))
        throw DegenerateTriangleError("triangle has a non-positive side", 0, 0);
    double lo = d_ab, mid = d_bc, hi = d_ca;
    if (lo > mid) std::swap(lo, mid);
    if (mid > hi) std::swap(mid, hi);
    if (lo > mid) std::swap(lo, mid);
    return {1.0 - mid / hi, 1.0 - lo / hi};
}

namespace {

void require_indexable(const DistanceMatrix& m) {
    if (m.entries.size() != m.size * m.size)
        throw std::invalid_argument("matrix is not square");
    if (m.size < 3)
        throw std::invalid_argument("index computation needs at least 3 points");
}

// Scans for a non-positive off-diagonal entry; errors unless skipping.
void scan_degenerate(const DistanceMatrix& m, bool skip) {
    if (skip) return;
    for (std::size_t a = 0; a < m.size; ++a) {
        for (std::size_t b = a + 1; b < m.size; ++b) {
            if (!(m.at(a, b) > 0))
                throw DegenerateTriangleError(
                    "matrix has a non-positive off-diagonal entry at (" + std::to_string(a) +
                        ", " + std::to_string(b) + ")",
                    a, b);
        }
    }
}

struct Accumulator {
    double sum_i = 0.0;
    double sum_j = 0.0;
    double sum_i_sq = 0.0;
    double sum_j_sq = 0.0;
    std::uint64_t counted = 0;
    std::uint64_t skipped = 0;

    void add(const DistanceMatrix& m, std::size_t a, std::size_t b, std::size_t c,
             bool skip_degenerate) {
        const double ab = m.at(a, b), bc = m.at(b, c), ca = m.at(c, a);
        if (skip_degenerate && (!(ab > 0) || !(bc > 0) || !(ca > 0))) {
            ++skipped;
            return;
        }
        double lo = ab, mid = bc, hi = ca;
        if (lo > mid) std::swap(lo, mid);
        if (mid > hi) std::swap(mid, hi);
        if (lo > mid) std::swap(lo, mid);
        const double i_val = 1.0 - mid / hi;
        const double j_val = 1.0 - lo / hi;
        sum_i += i_val;
        sum_j += j_val;
        sum_i_sq += i_val * i_val;
        sum_j_sq += j_val * j_val;
        ++counted;
    }

    void merge(const Accumulator& other) {
        sum_i += other.sum_i;
        sum_j += other.sum_j;
        sum_i_sq += other.sum_i_sq;
        sum_j_sq += other.sum_j_sq;
        counted += other.counted;
        skipped += other.skipped;
    }
};

}  // namespace

IndexSummary matrix_indexes(const DistanceMatrix& m, const IndexOptions& options) {
    require_indexable(m);
    if (m.size > options.max_exact_points && !options.allow_large)
        throw CapacityError("exact index enumeration over " + std::to_string(m.size) +
                            " points is capped at " + std::to_string(options.max_exact_points) +
                            "; pass allow_large to override");
    scan_degenerate(m, options.skip_degenerate);

    const std::uint64_t triples = detail::triple_count(m.size);
    constexpr std::size_t kTripleGrain = 1 << 16;
    const std::size_t n_chunks =
        (static_cast<std::size_t>(triples) + kTripleGrain - 1) / kTripleGrain;
    std::vector<Accumulator> partial(n_chunks);
    parallel::for_chunks(static_cast<std::size_t>(triples), kTripleGrain, options.threads,
                         [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                             detail::Triple t = detail::triple_at(begin, m.size);
                             Accumulator acc;
                             for (std::size_t rank = begin; rank < end; ++rank) {
                                 acc.add(m, t.a, t.b, t.c, options.skip_degenerate);
                                 t.advance(m.size);
                             }
                             partial[chunk] = acc;
                         });
    Accumulator total;
    for (const Accumulator& acc : partial) total.merge(acc);

    IndexSummary summary;
    summary.mode = IndexMode::exact;
    summary.triangle_count = total.counted;
    summary.skipped_triangles = total.skipped;
    if (total.counted == 0)
        throw DegenerateTriangleError("all triangles are degenerate", 0, 0);
    summary.ultrametricity = total.sum_i / static_cast<double>(total.counted);
    summary.isometricity = total.sum_j / static_cast<double>(total.counted);
    return summary;
}

IndexSummary ultrametricity_index(const DistanceMatrix& m, const IndexOptions& options) {
    return matrix_indexes(m, options);
}

IndexSummary isometricity_index(const DistanceMatrix& m, const IndexOptions& options) {
    return matrix_indexes(m, options);
}

IndexSummary sampled_indexes(const DistanceMatrix& m, std::uint64_t sample_count,
                             std::uint64_t seed, const IndexOptions& options) {
    require_indexable(m);
    if (sample_count < 100)
        throw std::invalid_argument("sample_count must be >= 100");

    const std::uint64_t triples = detail::triple_count(m.size);
    if (sample_count >= triples) {
        IndexOptions exact_options = options;
        exact_options.allow_large = true;  // full coverage was requested explicitly
        return matrix_indexes(m, exact_options);
    }
    scan_degenerate(m, options.skip_degenerate);

    Accumulator acc;
    for (const std::uint64_t rank : detail::sample_distinct(triples, sample_count, seed)) {
        const detail::Triple t = detail::triple_at(rank, m.size);
        acc.add(m, t.a, t.b, t.c, options.skip_degenerate);
    }
    if (acc.counted < 2)
        throw DegenerateTriangleError("too few non-degenerate triangles in the sample", 0, 0);

    IndexSummary summary;
    summary.mode = IndexMode::sampled;
    summary.triangle_count = acc.counted;
    summary.skipped_triangles = acc.skipped;
    summary.seed = seed;
    const auto k = static_cast<double>(acc.counted);
    summary.ultrametricity = acc.sum_i / k;
    summary.isometricity = acc.sum_j / k;
    const double var_i =
        std::max(0.0, (acc.sum_i_sq - k * summary.ultrametricity * summary.ultrametricity) /
                          (k - 1.0));
    const double var_j =
        std::max(0.0,
                 (acc.sum_j_sq - k * summary.isometricity * summary.isometricity) / (k - 1.0));
    summary.standard_error_u = std::sqrt(var_i / k);
    summary.standard_error_e = std::sqrt(var_j / k);
    return summary;
}

}  // namespace umgen

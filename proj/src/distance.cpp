#include "umgen/distance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "umgen/detail/triplets.hpp"
#include "umgen/errors.hpp"
#include "umgen/parallel.hpp"
#include "umgen/summation.hpp"

namespace umgen {

double DistanceMatrix::max_entry() const {
    double m = 0.0;
    for (const double e : entries)
        if (e > m) m = e;
    return m;
}

double normalized_distance(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("coordinate vectors have different lengths");
    if (x.empty()) throw std::invalid_argument("coordinate vectors must be nonempty");
    const double sum = squared_difference_sum(x.data(), y.data(), x.size());
    return std::sqrt(sum) / std::sqrt(static_cast<double>(x.size()));
}

DistanceMatrix distance_matrix(const PointCloud& cloud, const DistanceOptions& options) {
    const std::size_t n_pts = cloud.rows();
    if (n_pts == 0) throw std::invalid_argument("cloud has no points");
    if (n_pts > options.max_entries / n_pts)
        throw CapacityError("matrix of " + std::to_string(n_pts) +
                            "^2 entries exceeds the budget of " +
                            std::to_string(options.max_entries));

    DistanceMatrix m;
    m.size = n_pts;
    m.entries.assign(n_pts * n_pts, 0.0);
    m.labels.reserve(n_pts);
    for (std::size_t r = 0; r < n_pts; ++r)
        m.labels.push_back(delinearize(r, cloud.topology));

    const std::uint64_t pairs = detail::pair_count(n_pts);
    constexpr std::size_t kPairGrain = 256;
    parallel::for_chunks(
        static_cast<std::size_t>(pairs), kPairGrain, options.threads,
        [&](std::size_t, std::size_t begin, std::size_t end) {
            auto [a, b] = detail::pair_at(begin, n_pts);
            for (std::size_t rank = begin; rank < end; ++rank) {
                const double d = normalized_distance(cloud.row(a), cloud.row(b));
                m.entries[a * n_pts + b] = d;
                m.entries[b * n_pts + a] = d;
                if (++b == n_pts) {
                    ++a;
                    b = a + 1;
                }
            }
        });
    return m;
}

double default_axiom_tolerance(const DistanceMatrix& m) { return 1e-9 * m.max_entry(); }

MetricReport check_metric_axioms(const DistanceMatrix& m, double tol,
                                 const AxiomCheckOptions& options) {
    const std::size_t n = m.size;
    if (m.entries.size() != n * n) throw std::invalid_argument("matrix is not square");
    if (tol < 0) throw std::invalid_argument("tolerance must be >= 0");

    MetricReport report;
    auto record = [&](const MetricViolation& v) {
        ++report.total_violations;
        if (report.violations.size() < options.record_cap) report.violations.push_back(v);
    };

    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const double e = m.at(a, b);
            if (!std::isfinite(e) || e < -tol)
                record({MetricViolationKind::negative_entry, a, b, 0, e});
        }
        const double diag = m.at(a, a);
        if (!(std::abs(diag) <= tol))
            record({MetricViolationKind::nonzero_diagonal, a, a, 0, diag});
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const double gap = std::abs(m.at(a, b) - m.at(b, a));
            if (!(gap <= tol)) record({MetricViolationKind::asymmetry, a, b, 0, gap});
            if (std::abs(m.at(a, b)) <= tol) report.coincident_pairs.emplace_back(a, b);
        }
    }

    // Ordinary triangle inequality over unordered triplets, using
    // upper-triangle entries (asymmetry is reported separately above).
    auto check_triple = [&](std::size_t a, std::size_t b, std::size_t c,
                            std::vector<MetricViolation>& out) {
        const double ab = m.at(a, b), ac = m.at(a, c), bc = m.at(b, c);
        if (ab > ac + bc + tol)
            out.push_back({MetricViolationKind::triangle, a, b, c, ab - (ac + bc)});
        if (ac > ab + bc + tol)
            out.push_back({MetricViolationKind::triangle, a, c, b, ac - (ab + bc)});
        if (bc > ab + ac + tol)
            out.push_back({MetricViolationKind::triangle, b, c, a, bc - (ab + ac)});
    };

    const std::uint64_t triples = detail::triple_count(n);
    std::vector<std::vector<MetricViolation>> found;
    if (n <= options.max_exact_points) {
        constexpr std::size_t kTripleGrain = 1 << 15;
        const std::size_t n_chunks =
            (static_cast<std::size_t>(triples) + kTripleGrain - 1) / kTripleGrain;
        found.resize(n_chunks);
        parallel::for_chunks(static_cast<std::size_t>(triples), kTripleGrain, options.threads,
                             [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                                 detail::Triple t = detail::triple_at(begin, n);
                                 for (std::size_t rank = begin; rank < end; ++rank) {
                                     check_triple(t.a, t.b, t.c, found[chunk]);
                                     t.advance(n);
                                 }
                             });
    } else if (options.sample_count > 0) {
        const std::uint64_t k = std::min<std::uint64_t>(options.sample_count, triples);
        found.resize(1);
        for (const std::uint64_t rank : detail::sample_distinct(triples, k, options.sample_seed)) {
            const detail::Triple t = detail::triple_at(rank, n);
            check_triple(t.a, t.b, t.c, found[0]);
        }
    } else {
        throw CapacityError("triangle check over " + std::to_string(n) + " points needs " +
                            std::to_string(triples) +
                            " triplets; pass a sample count to check a random subset");
    }
    for (const auto& chunk : found)
        for (const auto& v : chunk) record(v);
    return report;
}

}  // namespace umgen

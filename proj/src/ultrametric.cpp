#include "umgen/ultrametric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "umgen/detail/triplets.hpp"
#include "umgen/errors.hpp"
#include "umgen/parallel.hpp"

namespace umgen {

double two_point_limit(double mean_a, double sigma_a, double mean_b, double sigma_b) {
    if (sigma_a < 0 || sigma_b < 0) throw std::invalid_argument("sigma must be >= 0");
    const double gap = mean_a - mean_b;
    return std::sqrt(sigma_a * sigma_a + sigma_b * sigma_b + gap * gap);
}

UltrametricMatrix theoretical_ultrametric(const TreeTopology& topology,
                                          std::size_t max_entries) {
    topology.validate();
    const std::size_t leaves = topology.leaf_count();
    if (leaves > max_entries / leaves)
        throw CapacityError("matrix of " + std::to_string(leaves) +
                            "^2 entries exceeds the budget of " + std::to_string(max_entries));

    // Distance depends on the pair only through the first divergence level l:
    // sqrt(2 * (sigma_l^2 + ... + sigma_N^2)). One shared value per level
    // keeps equal-level entries bit-identical, so the strong triangle
    // inequality holds exactly.
    const auto n_levels = static_cast<std::size_t>(topology.levels());
    std::vector<double> level_value(n_levels + 1, 0.0);  // 1-based
    double suffix = 0.0;
    for (std::size_t k = n_levels; k >= 1; --k) {
        suffix += topology.sigmas[k - 1] * topology.sigmas[k - 1];
        level_value[k] = std::sqrt(2.0 * suffix);
    }

    UltrametricMatrix m;
    m.size = leaves;
    m.entries.assign(leaves * leaves, 0.0);
    m.labels.reserve(leaves);
    for (std::size_t r = 0; r < leaves; ++r) m.labels.push_back(delinearize(r, topology));

    for (std::size_t a = 0; a < leaves; ++a) {
        for (std::size_t b = a + 1; b < leaves; ++b) {
            const auto level = first_divergence_level(m.labels[a], m.labels[b]);
            const double d = level_value[static_cast<std::size_t>(*level)];
            m.entries[a * leaves + b] = d;
            m.entries[b * leaves + a] = d;
        }
    }
    return m;
}

StrongTriangleReport check_strong_triangle(const DistanceMatrix& m, double tol,
                                           const StrongTriangleOptions& options) {
    const std::size_t n = m.size;
    if (m.entries.size() != n * n) throw std::invalid_argument("matrix is not square");
    if (tol < 0) throw std::invalid_argument("tolerance must be >= 0");

    StrongTriangleReport report;
    auto check_triple = [&](std::size_t a, std::size_t b, std::size_t c,
                            std::vector<StrongTriangleViolation>& out) {
        const double ab = m.at(a, b), ac = m.at(a, c), bc = m.at(b, c);
        double lo = ab, mid = ac, hi = bc;
        if (lo > mid) std::swap(lo, mid);
        if (mid > hi) std::swap(mid, hi);
        if (lo > mid) std::swap(lo, mid);
        if (hi - mid > tol) out.push_back({a, b, c, hi - mid});
    };

    const std::uint64_t triples = detail::triple_count(n);
    std::vector<std::vector<StrongTriangleViolation>> found;
    if (n <= options.max_exact_points) {
        report.checked_triangles = triples;
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
        report.checked_triangles = k;
        report.sampled = true;
        found.resize(1);
        for (const std::uint64_t rank : detail::sample_distinct(triples, k, options.sample_seed)) {
            const detail::Triple t = detail::triple_at(rank, n);
            check_triple(t.a, t.b, t.c, found[0]);
        }
    } else {
        throw CapacityError("strong triangle check over " + std::to_string(n) +
                            " points needs " + std::to_string(triples) +
                            " triplets; pass a sample count to check a random subset");
    }

    for (const auto& chunk : found) {
        for (const auto& v : chunk) {
            ++report.total_violations;
            if (report.violations.size() < options.record_cap) report.violations.push_back(v);
            if (v.excess > report.worst.excess) report.worst = v;
        }
    }
    return report;
}

double MonotoneTransform::operator()(double x) const {
    for (const Step& step : steps) {
        switch (step.kind) {
            case Step::Kind::power: x = std::pow(x, step.value); break;
            case Step::Kind::scale: x = step.value * x; break;
            case Step::Kind::saturate: x = std::min(x, step.value); break;
        }
    }
    return x;
}

MonotoneTransform MonotoneTransform::parse(std::string_view descriptor) {
    MonotoneTransform f;
    if (descriptor.empty())
        throw UnsupportedTransformError("empty transform descriptor");
    if (descriptor == "identity") return f;

    std::size_t pos = 0;
    while (pos <= descriptor.size()) {
        const std::size_t comma = std::min(descriptor.find(',', pos), descriptor.size());
        const std::string_view item = descriptor.substr(pos, comma - pos);
        const std::size_t colon = item.find(':');
        if (colon == std::string_view::npos)
            throw UnsupportedTransformError("transform step '" + std::string(item) +
                                            "' is not of the form kind:value");
        const std::string_view kind = item.substr(0, colon);
        const std::string_view arg = item.substr(colon + 1);
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), value);
        if (ec != std::errc() || ptr != arg.data() + arg.size() || !std::isfinite(value))
            throw UnsupportedTransformError("transform step '" + std::string(item) +
                                            "' has a malformed value");
        Step step{};
        if (kind == "pow")
            step.kind = Step::Kind::power;
        else if (kind == "scale")
            step.kind = Step::Kind::scale;
        else if (kind == "cap")
            step.kind = Step::Kind::saturate;
        else
            throw UnsupportedTransformError("unknown transform kind '" + std::string(kind) +
                                            "' (supported: pow, scale, cap, identity)");
        if (value <= 0.0)
            throw UnsupportedTransformError("transform step '" + std::string(item) +
                                            "' needs a positive value");
        step.value = value;
        f.steps.push_back(step);
        pos = comma + 1;
    }
    return f;
}

std::string MonotoneTransform::to_string() const {
    if (steps.empty()) return "identity";
    std::ostringstream out;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i > 0) out << ',';
        switch (steps[i].kind) {
            case Step::Kind::power: out << "pow:"; break;
            case Step::Kind::scale: out << "scale:"; break;
            case Step::Kind::saturate: out << "cap:"; break;
        }
        out << steps[i].value;
    }
    return out.str();
}

UltrametricMatrix transform_metric(const UltrametricMatrix& m, const MonotoneTransform& f) {
    UltrametricMatrix out = m;
    for (double& e : out.entries) e = f(e);
    return out;
}

Dendrogram recover_dendrogram(const UltrametricMatrix& m, double tol,
                              const StrongTriangleOptions& options) {
    const std::size_t n = m.size;
    if (m.entries.size() != n * n) throw std::invalid_argument("matrix is not square");
    if (n == 0) throw std::invalid_argument("matrix is empty");
    for (std::size_t a = 0; a < n; ++a) {
        if (m.at(a, a) != 0.0) throw std::invalid_argument("matrix diagonal is not zero");
        for (std::size_t b = a + 1; b < n; ++b)
            if (m.at(a, b) != m.at(b, a)) throw std::invalid_argument("matrix is not symmetric");
    }

    const StrongTriangleReport report = check_strong_triangle(m, tol, options);
    if (!report.ok()) {
        const auto& w = report.worst;
        std::ostringstream msg;
        msg << "matrix is not ultrametric at tolerance " << tol << ": triplet (" << w.a << ", "
            << w.b << ", " << w.c << ") exceeds by " << w.excess;
        throw NotUltrametricError(msg.str(), w.a, w.b, w.c, w.excess);
    }

    Dendrogram dendrogram;
    dendrogram.leaf_count = n;
    if (n == 1) return dendrogram;

    // Agglomeration over a fixed working matrix indexed by slot. `order`
    // lists active slots sorted by ascending cluster id (a fresh id is always
    // the largest), so a lexicographic scan keeping the first strict minimum
    // realizes the smallest-id tie rule.
    std::vector<std::size_t> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = i;
    std::vector<std::size_t> order(ids);
    std::vector<double> work(m.entries);
    auto w_at = [&](std::size_t i, std::size_t j) -> double& { return work[i * n + j]; };

    dendrogram.merges.reserve(n - 1);
    for (std::size_t step = 0; step < n - 1; ++step) {
        std::size_t best_i = 0, best_j = 1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < order.size(); ++i) {
            for (std::size_t j = i + 1; j < order.size(); ++j) {
                if (w_at(order[i], order[j]) < best) {
                    best = w_at(order[i], order[j]);
                    best_i = i;
                    best_j = j;
                }
            }
        }

        const std::size_t keep = order[best_i];
        const std::size_t drop = order[best_j];
        dendrogram.merges.push_back({ids[keep], ids[drop], best});

        for (const std::size_t slot : order) {
            const double d = std::min(w_at(keep, slot), w_at(drop, slot));
            w_at(keep, slot) = d;
            w_at(slot, keep) = d;
        }
        w_at(keep, keep) = 0.0;
        ids[keep] = n + step;
        order.erase(order.begin() + static_cast<std::ptrdiff_t>(best_j));
        order.erase(order.begin() + static_cast<std::ptrdiff_t>(best_i));
        order.push_back(keep);
    }
    return dendrogram;
}

DistanceMatrix cophenetic_matrix(const Dendrogram& dendrogram) {
    const std::size_t n = dendrogram.leaf_count;
    if (n == 0) throw std::invalid_argument("dendrogram has no leaves");
    if (dendrogram.merges.size() + 1 != n)
        throw std::invalid_argument("dendrogram must have exactly leaf_count - 1 merges");

    DistanceMatrix m;
    m.size = n;
    m.entries.assign(n * n, 0.0);

    std::vector<std::vector<std::size_t>> members(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) members[i] = {i};
    for (std::size_t step = 0; step < dendrogram.merges.size(); ++step) {
        const Merge& merge = dendrogram.merges[step];
        if (merge.left >= n + step || merge.right >= n + step)
            throw std::invalid_argument("merge references a cluster that does not exist yet");
        auto& left = members[merge.left];
        auto& right = members[merge.right];
        for (const std::size_t x : left) {
            for (const std::size_t y : right) {
                m.entries[x * n + y] = merge.height;
                m.entries[y * n + x] = merge.height;
            }
        }
        auto& merged = members[n + step];
        merged.reserve(left.size() + right.size());
        merged.insert(merged.end(), left.begin(), left.end());
        merged.insert(merged.end(), right.begin(), right.end());
        left.clear();
        right.clear();
    }
    return m;
}

namespace {

void render_node(const Dendrogram& dendrogram, std::size_t id, int depth,
                 std::ostringstream& out) {
    const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    if (id < dendrogram.leaf_count) {
        out << indent << "leaf " << id << '\n';
        return;
    }
    const Merge& merge = dendrogram.merges[id - dendrogram.leaf_count];
    out << indent << "cluster " << id << " @ " << merge.height << '\n';
    render_node(dendrogram, merge.left, depth + 1, out);
    render_node(dendrogram, merge.right, depth + 1, out);
}

}  // namespace

std::string render_dendrogram(const Dendrogram& dendrogram) {
    std::ostringstream out;
    if (dendrogram.merges.empty()) {
        if (dendrogram.leaf_count == 1) out << "leaf 0\n";
        return out.str();
    }
    render_node(dendrogram, dendrogram.leaf_count + dendrogram.merges.size() - 1, 0, out);
    return out.str();
}

}  // namespace umgen

#pragma once

#include <cstddef>
#include <span>

namespace umgen {

/// Pairwise (recursive halving) sum. Rounding error grows like O(log n)
/// rather than O(n), and the association order is a pure function of the
/// length, so serial and parallel callers see bit-identical results.
double pairwise_sum(std::span<const double> values);

/// Pairwise-summed sum of (x[i] - y[i])^2 over i in [0, n).
double squared_difference_sum(const double* x, const double* y, std::size_t n);

}  // namespace umgen

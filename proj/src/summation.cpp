#include "umgen/summation.hpp"

namespace umgen {

namespace {

constexpr std::size_t kBaseBlock = 64;

double pairwise_sum_range(const double* v, std::size_t n) {
    if (n <= kBaseBlock) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_range(v, half) + pairwise_sum_range(v + half, n - half);
}

double sqdiff_range(const double* x, const double* y, std::size_t n) {
    if (n <= kBaseBlock) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = x[i] - y[i];
            s += d * d;
        }
        return s;
    }
    const std::size_t half = n / 2;
    return sqdiff_range(x, y, half) + sqdiff_range(x + half, y + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
    return pairwise_sum_range(values.data(), values.size());
}

double squared_difference_sum(const double* x, const double* y, std::size_t n) {
    return sqdiff_range(x, y, n);
}

}  // namespace umgen

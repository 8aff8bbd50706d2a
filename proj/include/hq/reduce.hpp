#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hq {

// Reductions use a fixed 4096-element blocking: each block is summed
// left-to-right, block partials are then combined left-to-right. The result
// is independent of thread count, so residual and energy histories are
// bit-reproducible.
inline constexpr std::size_t kReduceBlock = 4096;

namespace detail {

inline std::size_t num_blocks(std::size_t n) {
    return (n + kReduceBlock - 1) / kReduceBlock;
}

template <class BlockFn>
double blocked_reduce(std::size_t n, BlockFn&& block_sum) {
    const std::size_t nb = num_blocks(n);
    if (nb == 0) return 0.0;
    if (nb == 1) return block_sum(std::size_t{0}, n);
    std::vector<double> partial(nb);
#pragma omp parallel for schedule(static)
    for (long long b = 0; b < static_cast<long long>(nb); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kReduceBlock;
        const std::size_t hi = lo + kReduceBlock < n ? lo + kReduceBlock : n;
        partial[static_cast<std::size_t>(b)] = block_sum(lo, hi);
    }
    double total = 0.0;
    for (double v : partial) total += v;
    return total;
}

}  // namespace detail

inline double sum(std::span<const double> v) {
    return detail::blocked_reduce(v.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t k = lo; k < hi; ++k) s += v[k];
        return s;
    });
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    return detail::blocked_reduce(a.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t k = lo; k < hi; ++k) s += a[k] * b[k];
        return s;
    });
}

inline double sum_sq(std::span<const double> v) { return dot(v, v); }

inline double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
    return detail::blocked_reduce(a.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t k = lo; k < hi; ++k) {
            const double d = a[k] - b[k];
            s += d * d;
        }
        return s;
    });
}

}  // namespace hq

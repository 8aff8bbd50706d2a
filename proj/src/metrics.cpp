#include "hq/metrics.hpp"

#include <cmath>
#include <limits>

#include "hq/reduce.hpp"

namespace hq {

double mse(const ScalarField& a, const ScalarField& b) {
    require_same_shape(a, b, "mse");
    return sum_sq_diff(a.span(), b.span()) / static_cast<double>(a.size());
}

double l2_norm(const ScalarField& f) {
    return std::sqrt(sum_sq(f.span()));
}

double step_norm(const ScalarField& a, const ScalarField& b) {
    require_same_shape(a, b, "step_norm");
    return std::sqrt(sum_sq_diff(a.span(), b.span()));
}

double psnr(const ScalarField& u, const ScalarField& ref) {
    require_same_shape(u, ref, "psnr");
    const int m = u.rows(), n = u.cols();
    ScalarField sq(m, n);
    auto clamp01 = [](double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); };
#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            const double d = clamp01(u(i, j)) - clamp01(ref(i, j));
            sq(i, j) = d * d;
        }
    }
    const double err = sum(sq.span()) / static_cast<double>(u.size());
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(1.0 / err);
}

}  // namespace hq

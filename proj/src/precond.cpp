#include "hq/precond.hpp"

namespace hq {

void sweep_color(const FivePointStencil& st, const ScalarField& z, ScalarField& u, int parity) {
    const int m = st.rows(), n = st.cols();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) {
        for (int j = (i + parity) & 1; j < n; j += 2) {
            u(i, j) = detail::gs_pixel(st, z, u, i, j);
        }
    }
}

void srbgs_cycles(const FivePointStencil& st, const ScalarField& z, ScalarField& u, int cycles) {
    require_same_shape(z, st.center(), "srbgs");
    require_same_shape(u, st.center(), "srbgs");
    for (std::size_t k = 0; k < st.center().size(); ++k) {
        if (!(st.center()[k] > 0.0))
            throw std::runtime_error("srbgs: non-positive center coefficient");
    }
    for (int c = 0; c < cycles; ++c) {
        sweep_color(st, z, u, 0);
        sweep_color(st, z, u, 1);
        sweep_color(st, z, u, 0);
    }
}

ScalarField srbgs(const ScalarField& gamma, const ScalarField& d1, const ScalarField& d2,
                  const ScalarField& z, const ScalarField& u0, int cycles, Scheme scheme) {
    if (cycles < 1) throw std::invalid_argument("srbgs: cycles must be >= 1");
    const FivePointStencil st = FivePointStencil::assemble(scheme, gamma, d1, d2);
    ScalarField u = u0;
    srbgs_cycles(st, z, u, cycles);
    return u;
}

ScalarField prox_step(const ScalarField& gamma, const ScalarField& d1, const ScalarField& d2,
                      const ScalarField& rhs, const ScalarField& u_prev, const SweepSpec& spec) {
    spec.validate();
    require_same_shape(gamma, rhs, "prox_step");
    require_same_shape(gamma, u_prev, "prox_step");

    const int m = gamma.rows(), n = gamma.cols();
    ScalarField gamma_shifted(m, n), z(m, n);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            gamma_shifted(i, j) = gamma(i, j) + spec.eta;
            z(i, j) = rhs(i, j) + spec.eta * u_prev(i, j);
        }
    }
    return srbgs(gamma_shifted, d1, d2, z, u_prev, spec.cycles, spec.scheme);
}

}  // namespace hq

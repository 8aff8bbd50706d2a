#pragma once

#include "hq/stencil.hpp"

namespace hq {

/// Inner-solver settings: number of symmetric red-black Gauss-Seidel
/// cycles per proximal step, the eta shift keeping the implicit proximal
/// metric positive definite, and the discretization scheme.
///
/// The cap on eta is a documented guard; 1e-5 (the default) is already far
/// below anything that perturbs solutions measurably.
struct SweepSpec {
    int cycles = 10;
    double eta = 1e-5;
    Scheme scheme = Scheme::nffd;

    static constexpr double kEtaCap = 1e-2;

    void validate() const {
        if (cycles < 1)
            throw std::invalid_argument("SweepSpec: cycles must be >= 1");
        if (!(eta > 0.0) || eta > kEtaCap)
            throw std::invalid_argument("SweepSpec: eta must lie in (0, 1e-2]");
    }
};

/// Work accounting: one cycle touches every pixel three half-sweep times,
/// each with a full stencil row, i.e. 1.5 stencil-application equivalents.
inline constexpr double kWorkUnitsPerCycle = 1.5;

namespace detail {

// Solve the stencil row at (i,j) exactly, given current neighbor values.
inline double gs_pixel(const FivePointStencil& st, const ScalarField& z,
                       const ScalarField& u, int i, int j) {
    const int m = st.rows(), n = st.cols();
    double acc = z(i, j);
    if (i > 0) acc -= st.north()(i, j) * u(i - 1, j);
    if (i < m - 1) acc -= st.south()(i, j) * u(i + 1, j);
    if (j > 0) acc -= st.west()(i, j) * u(i, j - 1);
    if (j < n - 1) acc -= st.east()(i, j) * u(i, j + 1);
    return acc / st.center()(i, j);
}

}  // namespace detail

/// One half-sweep over the pixels of one color. Red is parity 0, the set
/// {(i,j) : i+j even}; black is parity 1. Same-color pixels have no
/// couplings, so the per-pixel updates are independent.
void sweep_color(const FivePointStencil& st, const ScalarField& z, ScalarField& u, int parity);

/// n red->black->red cycles on the pre-assembled system, in place.
void srbgs_cycles(const FivePointStencil& st, const ScalarField& z, ScalarField& u, int cycles);

/// n SRBGS cycles for gamma*u + div*(B grad u) = z starting from u0.
ScalarField srbgs(const ScalarField& gamma, const ScalarField& d1, const ScalarField& d2,
                  const ScalarField& z, const ScalarField& u0, int cycles,
                  Scheme scheme = Scheme::nffd);

/// The proximal update for the subproblem with operator
/// gamma*u + div*(B grad u) and right-hand side rhs: n SRBGS cycles on the
/// eta-shifted system (gamma + eta, rhs + eta*u_prev) started from u_prev.
/// Equivalent to the exact minimizer of the quadratic subproblem plus
/// (1/2)||u - u_prev||^2 in the metric induced by the sweeps.
ScalarField prox_step(const ScalarField& gamma, const ScalarField& d1, const ScalarField& d2,
                      const ScalarField& rhs, const ScalarField& u_prev, const SweepSpec& spec);

}  // namespace hq

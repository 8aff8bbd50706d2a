#pragma once

#include "hq/precond.hpp"

namespace hq::serial {

// Plain single-threaded versions of the OpenMP kernels, kept as the
// reference the parallel implementations are tested against (results must
// match bitwise) and as the baseline for the kernel benchmark.

VectorField forward_grad(const ScalarField& u);
ScalarField backward_div(const VectorField& p);
ScalarField grad_sq(const ScalarField& u, GradSqMode mode);

FivePointStencil assemble(Scheme scheme, const ScalarField& gamma, const ScalarField& d1,
                          const ScalarField& d2);
ScalarField apply(const FivePointStencil& st, const ScalarField& u);

ScalarField srbgs(const ScalarField& gamma, const ScalarField& d1, const ScalarField& d2,
                  const ScalarField& z, const ScalarField& u0, int cycles,
                  Scheme scheme = Scheme::nffd);

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace hq::serial

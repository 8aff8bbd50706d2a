#pragma once

#include "hq/stencil.hpp"

namespace hq {

enum class CgStatus { converged, max_iterations, breakdown };

struct CgReport {
    ScalarField solution;
    int iterations = 0;
    double final_residual = 0.0;  // 2-norm of the recurrence residual
    long matvec_count = 0;        // stencil applications (the work unit)
    CgStatus status = CgStatus::max_iterations;
};

/// Conjugate gradient for the assembled symmetric positive definite system,
/// stopping on ||z - T u|| <= rel_tol * ||z - T u0||. A zero-curvature
/// search direction is reported as breakdown, distinct from running out of
/// iterations. Inner products use the fixed-block summation of reduce.hpp,
/// so residual histories are reproducible.
CgReport cg(const FivePointStencil& st, const ScalarField& z, const ScalarField& u0,
            double rel_tol, int max_iters);

/// Direct solve of the materialized system (verification oracle,
/// m*n <= 4096). Throws if the factorization fails to reach a residual of
/// 1e-10 * ||z||, which signals a precondition violation upstream.
ScalarField dense_solve(const FivePointStencil& st, const ScalarField& z);

}  // namespace hq

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hq/stencil.hpp"

namespace hq {

struct CheckResult {
    std::string name;
    bool passed = false;
    double worst = 0.0;  // largest deviation seen (check-specific meaning)
    std::string detail;
};

/// The symmetric Gauss-Seidel preconditioner of Tbar in red-black pixel
/// ordering: permute red pixels (i+j even) first, split into D + L + U and
/// form (D+L) D^-1 (D+U), mapped back to row-major ordering. This is the
/// matrix one red->black->red cycle applies implicitly.
Eigen::MatrixXd dense_srbgs_preconditioner(const Eigen::MatrixXd& tbar, int rows, int cols);

/// Dense-oracle invariant suite: difference-operator adjointness, scheme
/// equivalence for constant coefficients, stencil symmetry and the Neumann
/// row-sum identity, the preconditioned-iteration identity for one sweep
/// cycle, and grid-search optimality of the four auxiliary updates.
std::vector<CheckResult> run_verification(const std::vector<std::pair<int, int>>& sizes,
                                          std::uint64_t seed = 20240901);

}  // namespace hq

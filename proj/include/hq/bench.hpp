#pragma once

#include <string>
#include <vector>

#include "hq/models.hpp"

namespace hq {

// Solver variants for the work-unit comparison: the preconditioned sweeps,
// conjugate gradient on the same eta-shifted proximal subproblem at a given
// relative tolerance, and conjugate gradient on the raw subproblem without
// any proximal term (no descent guarantee; its energy is recorded as-is).
enum class SolverKind { srbgs, cg_prox, cg_noprox };

struct BenchVariant {
    SolverKind kind = SolverKind::srbgs;
    int cycles = 10;     // srbgs only
    double tol = 1e-6;   // cg only
    std::string name() const;
};

std::vector<BenchVariant> default_bench_variants(int cycles);

struct BenchPoint {
    std::string variant;
    int outer_iter = 0;
    double energy = 0.0;
    double psnr = 0.0;       // NaN without a reference
    double work_units = 0.0; // cumulative stencil applications
    double seconds = 0.0;    // cumulative wall clock
};

/// Runs the alternating minimization once per variant (closed-form
/// auxiliary models only) and records one row per outer iteration.
std::vector<BenchPoint> run_bench(const ModelConfig& cfg, const ScalarField& u0,
                                  const ScalarField* reference, int outer_iters,
                                  const std::vector<BenchVariant>& variants);

}  // namespace hq

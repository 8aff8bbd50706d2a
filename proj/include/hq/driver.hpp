#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hq/models.hpp"

namespace hq {

struct RunConfig {
    ModelConfig model;
    int max_outer_iters = 300;
    double energy_rel_tol = 1e-8;           // stop when |dE| < tol * |E0|
    std::optional<ScalarField> reference;   // clean image for PSNR tracking
    bool record_iterates = false;           // keep snapshots for rate fitting
};

struct TraceRow {
    int iter = 0;            // outer iteration, 1-based
    double energy = 0.0;     // L(u^k, y^k)
    double psnr = 0.0;       // NaN when no reference is given
    double step_norm_u = 0.0;
    double step_norm_aux = 0.0;
    double work_units = 0.0; // cumulative stencil-application equivalents
    double seconds = 0.0;    // cumulative wall clock
};

struct SolverTrace {
    double initial_energy = 0.0;
    double initial_psnr = 0.0;
    std::vector<TraceRow> rows;

    // Filled when record_iterates is set: state snapshots (index 0 is the
    // initial state) and their distances ||(u^k,y^k) - (u^K,y^K)|| to the
    // final iterate, the limit surrogate for rate fitting.
    std::vector<ModelState> iterates;
    std::vector<double> distance_to_final;
};

/// The outer alternating loop: proximal u-step via SRBGS sweeps, then the
/// model's auxiliary update (closed form, or a second preconditioned solve
/// for the ms edge indicator). Stops at max_outer_iters or when the energy
/// change falls below energy_rel_tol relative to the initial energy.
/// Throws if the energy increases beyond 1e-10 * |E0|, which signals an
/// implementation or parameter-orientation bug.
std::pair<ModelState, SolverTrace> run(const RunConfig& cfg, const ScalarField& u0);

struct RateFit {
    double slope = 0.0;
    double r_squared = 0.0;
};

/// Least-squares line through (k, log d_k) over the tail window (last half
/// of the sequence, excluding the final 3 points where the distance
/// underflows). Requires at least 5 usable points.
RateFit fit_linear_rate(std::span<const double> distances);

}  // namespace hq

#include "hq/driver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "hq/metrics.hpp"

namespace hq {

namespace {

double distance_between(const ModelState& a, const ModelState& b) {
    const double du = step_norm(a.u, b.u);
    const double dy = aux_step_norm(a.aux, b.aux);
    return std::sqrt(du * du + dy * dy);
}

}  // namespace

std::pair<ModelState, SolverTrace> run(const RunConfig& cfg, const ScalarField& u0) {
    cfg.model.validate();
    if (cfg.max_outer_iters < 0)
        throw std::invalid_argument("run: max_outer_iters must be >= 0");
    if (cfg.energy_rel_tol < 0.0)
        throw std::invalid_argument("run: energy_rel_tol must be >= 0");
    if (!u0.is_finite())
        throw std::invalid_argument("run: input image contains non-finite values");
    if (cfg.reference) require_same_shape(*cfg.reference, u0, "run reference");

    const ModelConfig& mc = cfg.model;
    const bool is_ms = mc.model == Model::ms;

    ModelState state{u0, initial_aux(mc, u0.rows(), u0.cols())};
    SolverTrace trace;

    double e_prev = energy(mc, state, u0);
    trace.initial_energy = e_prev;
    trace.initial_psnr =
        cfg.reference ? psnr(state.u, *cfg.reference) : std::numeric_limits<double>::quiet_NaN();
    if (cfg.record_iterates) trace.iterates.push_back(state);

    const double e0_abs = std::abs(e_prev);
    // absolute floor covers the already-converged case (E0 = 0), where
    // rounding dust of order eps^2 would otherwise trip the monotonicity abort
    const double rise_tol = 1e-10 * e0_abs + std::numeric_limits<double>::epsilon();
    const double stop_denom = e0_abs > 0.0 ? e0_abs : 1.0;

    double work = 0.0;
    const auto t0 = std::chrono::steady_clock::now();

    for (int k = 1; k <= cfg.max_outer_iters; ++k) {
        const StepSystem usys = u_step_coefficients(mc, state, u0);
        ScalarField u_new = prox_step(usys.gamma, usys.d1, usys.d2, usys.rhs, state.u, mc.sweep);
        work += kWorkUnitsPerCycle * mc.sweep.cycles;

        Aux aux_new;
        if (is_ms) {
            const ScalarField& s_prev = std::get<ScalarField>(state.aux);
            const ScalarField& u_for_s = mc.ms_s_from_updated_u ? u_new : state.u;
            const StepSystem ssys = s_step_coefficients(mc, u_for_s, s_prev);
            aux_new = srbgs(ssys.gamma, ssys.d1, ssys.d2, ssys.rhs, s_prev, mc.sweep.cycles,
                            mc.sweep.scheme);
            work += kWorkUnitsPerCycle * mc.sweep.cycles;
        } else {
            aux_new = update_aux(mc, state.aux, u_new);
        }

        TraceRow row;
        row.iter = k;
        row.step_norm_u = step_norm(u_new, state.u);
        row.step_norm_aux = aux_step_norm(aux_new, state.aux);

        state.u = std::move(u_new);
        state.aux = std::move(aux_new);

        const double e = energy(mc, state, u0);
        if (e > e_prev + rise_tol) {
            std::ostringstream msg;
            msg << "run[" << to_string(mc.model) << "]: energy increased at outer iteration "
                << k << " (" << e_prev << " -> " << e
                << "); check parameter orientation or subproblem assembly";
            throw std::runtime_error(msg.str());
        }

        row.energy = e;
        row.psnr = cfg.reference ? psnr(state.u, *cfg.reference)
                                 : std::numeric_limits<double>::quiet_NaN();
        row.work_units = work;
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        trace.rows.push_back(row);
        if (cfg.record_iterates) trace.iterates.push_back(state);

        const double change = std::abs(e_prev - e);
        e_prev = e;
        if (change < cfg.energy_rel_tol * stop_denom) break;
    }

    if (cfg.record_iterates) {
        trace.distance_to_final.reserve(trace.iterates.size());
        for (const ModelState& s : trace.iterates)
            trace.distance_to_final.push_back(distance_between(s, state));
    }
    return {std::move(state), std::move(trace)};
}

RateFit fit_linear_rate(std::span<const double> distances) {
    const std::size_t K = distances.size();
    std::vector<double> xs, ys;
    if (K > 3) {
        const std::size_t lo = K / 2;
        const std::size_t hi = K - 3;
        for (std::size_t k = lo; k < hi; ++k) {
            if (distances[k] > 0.0) {
                xs.push_back(static_cast<double>(k));
                ys.push_back(std::log(distances[k]));
            }
        }
    }
    if (xs.size() < 5)
        throw std::invalid_argument("fit_linear_rate: need at least 5 usable tail distances");

    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }

    RateFit fit;
    fit.slope = sxy / sxx;
    if (syy == 0.0) {
        fit.r_squared = 1.0;  // exact (constant) fit
    } else {
        const double ss_res = syy - sxy * sxy / sxx;
        fit.r_squared = 1.0 - ss_res / syy;
    }
    return fit;
}

}  // namespace hq

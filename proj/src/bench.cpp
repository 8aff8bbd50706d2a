#include "hq/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hq/linsolve.hpp"
#include "hq/metrics.hpp"

namespace hq {

std::string BenchVariant::name() const {
    char buf[64];
    switch (kind) {
        case SolverKind::srbgs:
            std::snprintf(buf, sizeof buf, "srbgs-%d", cycles);
            break;
        case SolverKind::cg_prox:
            std::snprintf(buf, sizeof buf, "cg-prox-%g", tol);
            break;
        case SolverKind::cg_noprox:
            std::snprintf(buf, sizeof buf, "cg-noprox-%g", tol);
            break;
    }
    return buf;
}

std::vector<BenchVariant> default_bench_variants(int cycles) {
    return {
        {SolverKind::srbgs, cycles, 0.0},
        {SolverKind::cg_prox, 0, 1e-3},
        {SolverKind::cg_prox, 0, 1e-6},
        {SolverKind::cg_noprox, 0, 1e-3},
    };
}

std::vector<BenchPoint> run_bench(const ModelConfig& cfg, const ScalarField& u0,
                                  const ScalarField* reference, int outer_iters,
                                  const std::vector<BenchVariant>& variants) {
    cfg.validate();
    if (cfg.model == Model::ms)
        throw std::invalid_argument("run_bench: closed-form auxiliary models only");
    const int m = u0.rows(), n = u0.cols();
    const int cg_cap = std::max(2000, m * n);

    std::vector<BenchPoint> points;
    for (const BenchVariant& var : variants) {
        ModelState state{u0, initial_aux(cfg, m, n)};
        double work = 0.0;
        const std::string vname = var.name();
        const auto t0 = std::chrono::steady_clock::now();

        for (int k = 1; k <= outer_iters; ++k) {
            const StepSystem sys = u_step_coefficients(cfg, state, u0);
            ScalarField u_new(m, n);
            switch (var.kind) {
                case SolverKind::srbgs: {
                    SweepSpec spec = cfg.sweep;
                    spec.cycles = var.cycles;
                    u_new = prox_step(sys.gamma, sys.d1, sys.d2, sys.rhs, state.u, spec);
                    work += kWorkUnitsPerCycle * var.cycles;
                    break;
                }
                case SolverKind::cg_prox: {
                    const double eta = cfg.sweep.eta;
                    ScalarField gam = sys.gamma, zb = sys.rhs;
                    for (std::size_t q = 0; q < gam.size(); ++q) {
                        gam[q] += eta;
                        zb[q] += eta * state.u[q];
                    }
                    const auto st =
                        FivePointStencil::assemble(cfg.sweep.scheme, gam, sys.d1, sys.d2);
                    const CgReport rep = cg(st, zb, state.u, var.tol, cg_cap);
                    u_new = rep.solution;
                    work += static_cast<double>(rep.matvec_count);
                    break;
                }
                case SolverKind::cg_noprox: {
                    const auto st = FivePointStencil::assemble(cfg.sweep.scheme, sys.gamma,
                                                               sys.d1, sys.d2);
                    const CgReport rep = cg(st, sys.rhs, state.u, var.tol, cg_cap);
                    u_new = rep.solution;
                    work += static_cast<double>(rep.matvec_count);
                    break;
                }
            }
            state.u = std::move(u_new);
            state.aux = update_aux(cfg, state.aux, state.u);

            BenchPoint pt;
            pt.variant = vname;
            pt.outer_iter = k;
            pt.energy = energy(cfg, state, u0);
            pt.psnr = reference ? psnr(state.u, *reference)
                                : std::numeric_limits<double>::quiet_NaN();
            pt.work_units = work;
            pt.seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            points.push_back(std::move(pt));
        }
    }
    return points;
}

}  // namespace hq

#include "hq/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "hq/linsolve.hpp"
#include "hq/models.hpp"
#include "hq/precond.hpp"
#include "hq/reduce.hpp"

namespace hq {

namespace {

ScalarField random_field(std::mt19937_64& rng, int m, int n, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    ScalarField f(m, n);
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = dist(rng);
    return f;
}

double field_dot(const ScalarField& a, const ScalarField& b) {
    return dot(a.span(), b.span());
}

double vec_dot(const VectorField& a, const VectorField& b) {
    return dot(a.x.span(), b.x.span()) + dot(a.y.span(), b.y.span());
}

struct Suite {
    std::vector<CheckResult> results;

    void record(const std::string& name, double worst, double tol, const std::string& detail = "") {
        CheckResult r;
        r.name = name;
        r.worst = worst;
        r.passed = worst <= tol;
        std::ostringstream d;
        d << "worst " << worst << " vs tol " << tol;
        if (!detail.empty()) d << " (" << detail << ")";
        r.detail = d.str();
        results.push_back(std::move(r));
    }
};

template <class Objective>
double grid_argmin(Objective&& f, double lo, double hi, int points) {
    double best_x = lo, best_v = f(lo);
    for (int k = 1; k < points; ++k) {
        const double x = lo + (hi - lo) * k / (points - 1);
        const double v = f(x);
        if (v < best_v) {
            best_v = v;
            best_x = x;
        }
    }
    return best_x;
}

}  // namespace

Eigen::MatrixXd dense_srbgs_preconditioner(const Eigen::MatrixXd& tbar, int rows, int cols) {
    const Eigen::Index N = tbar.rows();
    if (N != static_cast<Eigen::Index>(rows) * cols || tbar.cols() != N)
        throw std::invalid_argument("dense_srbgs_preconditioner: dimension mismatch");

    std::vector<Eigen::Index> perm;
    perm.reserve(static_cast<std::size_t>(N));
    for (int parity = 0; parity < 2; ++parity)
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (((i + j) & 1) == parity)
                    perm.push_back(static_cast<Eigen::Index>(i) * cols + j);

    Eigen::MatrixXd tp(N, N);
    for (Eigen::Index a = 0; a < N; ++a)
        for (Eigen::Index b = 0; b < N; ++b) tp(a, b) = tbar(perm[a], perm[b]);

    Eigen::MatrixXd dl = tp, du = tp;
    dl.triangularView<Eigen::StrictlyUpper>().setZero();  // D + L
    du.triangularView<Eigen::StrictlyLower>().setZero();  // D + U
    const Eigen::MatrixXd mp = dl * tp.diagonal().cwiseInverse().asDiagonal() * du;

    Eigen::MatrixXd out(N, N);
    for (Eigen::Index a = 0; a < N; ++a)
        for (Eigen::Index b = 0; b < N; ++b) out(perm[a], perm[b]) = mp(a, b);
    return out;
}

std::vector<CheckResult> run_verification(const std::vector<std::pair<int, int>>& sizes,
                                          std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Suite suite;
    constexpr int kTrials = 20;

    // Adjointness of the two difference/divergence pairs.
    {
        double worst_fwd = 0.0, worst_tilde = 0.0;
        for (auto [m, n] : sizes) {
            for (int t = 0; t < kTrials; ++t) {
                const ScalarField u = random_field(rng, m, n, -1.0, 1.0);
                const VectorField p{random_field(rng, m, n, -1.0, 1.0),
                                    random_field(rng, m, n, -1.0, 1.0)};
                worst_fwd = std::max(
                    worst_fwd,
                    std::abs(vec_dot(forward_grad(u), p) + field_dot(u, backward_div(p))));
                worst_tilde = std::max(
                    worst_tilde,
                    std::abs(vec_dot(tilde_grad(u), p) + field_dot(u, tilde_div(p))));
            }
        }
        suite.record("adjointness-forward/backward", worst_fwd, 1e-12);
        suite.record("adjointness-tilde-pair", worst_tilde, 1e-12);
    }

    // Constant coefficients make the two discretizations coincide bitwise.
    {
        std::uniform_real_distribution<double> cd(0.0, 4.0);
        int mismatches = 0;
        for (auto [m, n] : sizes) {
            for (int t = 0; t < kTrials; ++t) {
                const ScalarField gamma = random_field(rng, m, n, 0.2, 2.0);
                const ScalarField d1(m, n, cd(rng)), d2(m, n, cd(rng));
                if (!(assemble_nffd(gamma, d1, d2) == assemble_sffd(gamma, d1, d2)))
                    ++mismatches;
            }
        }
        suite.record("scheme-equivalence-constant", mismatches, 0, "bitwise stencil compare");
    }

    // Dense symmetry and the Neumann row-sum identity, both schemes.
    {
        double worst_sym = 0.0, worst_neumann = 0.0;
        for (auto [m, n] : sizes) {
            for (Scheme sch : {Scheme::nffd, Scheme::sffd}) {
                const ScalarField gamma = random_field(rng, m, n, 0.2, 2.0);
                const ScalarField d1 = random_field(rng, m, n, 0.0, 3.0);
                const ScalarField d2 = random_field(rng, m, n, 0.0, 3.0);
                const auto st = FivePointStencil::assemble(sch, gamma, d1, d2);
                const Eigen::MatrixXd M = st.to_dense();
                worst_sym = std::max(worst_sym, (M - M.transpose()).cwiseAbs().maxCoeff());

                const double c = 0.7;
                const ScalarField r = st.apply(ScalarField(m, n, c));
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < n; ++j)
                        worst_neumann =
                            std::max(worst_neumann, std::abs(r(i, j) - gamma(i, j) * c));
            }
        }
        suite.record("stencil-symmetry", worst_sym, 0.0);
        suite.record("neumann-constant-identity", worst_neumann, 1e-13);
    }

    // One sweep cycle is the classical preconditioned iteration with the
    // red-black split matrix.
    {
        double worst_raw = 0.0, worst_prox = 0.0;
        for (auto [m, n] : sizes) {
            const Eigen::Index N = static_cast<Eigen::Index>(m) * n;
            for (Scheme sch : {Scheme::nffd, Scheme::sffd}) {
                const ScalarField gamma(m, n, 1.0);
                const ScalarField d1 = random_field(rng, m, n, 0.0, 3.0);
                const ScalarField d2 = random_field(rng, m, n, 0.0, 3.0);
                const ScalarField rhs = random_field(rng, m, n, -1.0, 1.0);
                const ScalarField uprev = random_field(rng, m, n, -1.0, 1.0);
                const auto st = FivePointStencil::assemble(sch, gamma, d1, d2);
                const Eigen::MatrixXd T = st.to_dense();
                Eigen::Map<const Eigen::VectorXd> bvec(rhs.data(), N);
                Eigen::Map<const Eigen::VectorXd> uvec(uprev.data(), N);

                // plain srbgs, one cycle, no shift
                {
                    const Eigen::MatrixXd M = dense_srbgs_preconditioner(T, m, n);
                    const Eigen::VectorXd expect =
                        uvec + M.partialPivLu().solve(bvec - T * uvec);
                    const ScalarField got = srbgs(gamma, d1, d2, rhs, uprev, 1, sch);
                    Eigen::Map<const Eigen::VectorXd> gvec(got.data(), N);
                    worst_raw = std::max(worst_raw, (gvec - expect).cwiseAbs().maxCoeff());
                }
                // prox_step with n = 1 (eta-shifted system)
                {
                    SweepSpec spec;
                    spec.cycles = 1;
                    spec.scheme = sch;
                    const Eigen::MatrixXd Tbar =
                        T + spec.eta * Eigen::MatrixXd::Identity(N, N);
                    const Eigen::MatrixXd M = dense_srbgs_preconditioner(Tbar, m, n);
                    const Eigen::VectorXd expect =
                        uvec + M.partialPivLu().solve(bvec - T * uvec);
                    const ScalarField got = prox_step(gamma, d1, d2, rhs, uprev, spec);
                    Eigen::Map<const Eigen::VectorXd> gvec(got.data(), N);
                    worst_prox = std::max(worst_prox, (gvec - expect).cwiseAbs().maxCoeff());
                }
            }
        }
        suite.record("srbgs-preconditioner-identity", worst_raw, 1e-10);
        suite.record("prox-step-preconditioner-identity", worst_prox, 1e-10);
    }

    // Closed-form auxiliary updates against grid-search minimizers of the
    // per-pixel proximal objectives.
    {
        std::uniform_real_distribution<double> ub(0.0, 1.0), ug(0.0, 3.0);
        std::uniform_real_distribution<double> umu(0.1, 3.0), ula(0.01, 1.0);
        constexpr int kPts = 10001;
        double worst_gr = 0.0, worst_gm = 0.0, worst_hl = 0.0, worst_gy = 0.0;
        for (int t = 0; t < 50; ++t) {
            const double mu = umu(rng), lambda = ula(rng);
            const double bp = ub(rng), g = ug(rng);
            {
                const double got = pixel::gr_b(bp, g, mu / lambda);
                const double ref = grid_argmin(
                    [&](double b) {
                        return 0.5 * lambda * b * ((mu / lambda) * g - 1.0) +
                               0.25 * lambda * (b - bp) * (b - bp);
                    },
                    0.0, 1.0, kPts);
                worst_gr = std::max(worst_gr, std::abs(got - ref));
            }
            {
                const double xi = g / lambda;
                const double bp1 = 1e-3 + (1.0 - 1e-3) * ub(rng);
                const double got = pixel::gm_b(bp1, xi);
                const double ref = grid_argmin(
                    [&](double b) {
                        return 0.5 * mu * (b * xi + b - 2.0 * std::sqrt(b)) +
                               0.25 * mu * (b - bp1) * (b - bp1);
                    },
                    1e-9, 1.0, kPts);
                worst_gm = std::max(worst_gm, std::abs(got - ref));

                const double got_hl = pixel::hl_b(bp1, xi);
                const double ref_hl = grid_argmin(
                    [&](double b) {
                        return 0.5 * mu * (b * xi + b - std::log(b)) +
                               0.25 * mu * (b - bp1) * (b - bp1);
                    },
                    1e-6, 1.5, kPts);
                worst_hl = std::max(worst_hl, std::abs(got_hl - ref_hl));
            }
            {
                const double a = lambda / mu, sqrt_a = std::sqrt(a);
                std::uniform_real_distribution<double> utau(0.2, 4.0), ul(-3.0, 3.0);
                const double tau = utau(rng), lhat = ul(rng);
                const double got = pixel::gy_shrink_scale(std::abs(lhat), tau, sqrt_a) * lhat;
                auto hstar = [&](double l) {
                    const double mag = std::abs(l);
                    return mag <= sqrt_a ? sqrt_a * mag - 0.5 * a : 0.5 * mag * mag;
                };
                const double lo = std::min(0.0, lhat) - 0.01;
                const double hi = std::max(0.0, lhat) + 0.01;
                const double ref = grid_argmin(
                    [&](double l) { return hstar(l) + (l - lhat) * (l - lhat) / (2.0 * tau); },
                    lo, hi, kPts);
                worst_gy = std::max(worst_gy, std::abs(got - ref));
            }
        }
        suite.record("prox-optimality-gr", worst_gr, 1e-3);
        suite.record("prox-optimality-gm", worst_gm, 1e-3);
        suite.record("prox-optimality-hl", worst_hl, 1e-3);
        suite.record("prox-optimality-gy", worst_gy, 1e-3);
    }

    return suite.results;
}

}  // namespace hq

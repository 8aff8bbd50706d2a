#pragma once

#include <cmath>
#include <variant>

#include "hq/precond.hpp"

namespace hq {

// The five regularization models. gr/gy are the two reformulations of the
// truncated quadratic objective, gm and hl the rational and logarithmic
// nonconvex penalties, ms the elliptic approximation of the free-boundary
// segmentation energy with edge indicator s.
enum class Model { gr, gy, gm, hl, ms };
enum class Isotropy { iso, aniso };

const char* to_string(Model m);

struct ModelConfig {
    Model model = Model::hl;
    Isotropy isotropy = Isotropy::aniso;  // ms is always isotropic
    double mu = 0.005;
    double lambda = 0.001;
    double alpha = 1000.0;    // ms smoothing weight
    double epsilon = 0.02;    // ms edge-band width
    double kappa = 0.0;       // gy proximal weight; <= 0 means "use mu"
    double gamma_prox = 1e-5; // ms s-step proximal weight
    SweepSpec sweep;

    // The projection step for gr admits two printed orientations of the
    // gradient coefficient; the derivation-consistent mu/lambda is the
    // default, lambda/mu is kept selectable for comparison.
    bool gr_lambda_over_mu = false;
    // Reaction term of the ms s-step. The alternating scheme minimizes
    // L(u^{k+1}, .) in the s-step, so the reaction coefficient must be
    // evaluated at the freshly updated u; with the previous iterate the
    // energy is not monotone. The false setting is kept for comparison.
    bool ms_s_from_updated_u = true;

    double kappa_eff() const { return kappa > 0.0 ? kappa : mu; }
    void validate() const;
};

/// Primal image plus the model's auxiliary variable: a scalar field for
/// isotropic gr/gm/hl and for the ms edge indicator, a two-component field
/// for gy and the anisotropic cases.
using Aux = std::variant<ScalarField, VectorField>;

struct ModelState {
    ScalarField u;
    Aux aux;
};

/// Auxiliary variable a fresh run starts from: b = 1, l = 0, s = 1.
Aux initial_aux(const ModelConfig& cfg, int rows, int cols);

bool aux_is_vector(const ModelConfig& cfg);
double aux_step_norm(const Aux& a, const Aux& b);
bool aux_finite(const Aux& a);

// ---------------------------------------------------------------------------
// Energies

/// Full model energy L(u, aux) with the data term ||u - u0||^2 / 2 and
/// integrals realized as plain grid sums (unit pixel area). Returns +inf
/// when the auxiliary variable is outside its domain (gr: b not in [0,1],
/// gm: b < 0, hl: b <= 0).
///
/// The squared-gradient terms follow cfg.sweep.scheme: forward differences
/// for nffd, the symmetrized form grad_sq_sym for sffd. Each scheme's
/// u-step is the exact Euler-Lagrange solve of its own discretization, so
/// this is what makes the monitored energy a descent quantity in both
/// cases. (The gy coupling term uses the forward gradient directly and has
/// constant coefficients, so it is scheme-independent.)
double energy(const ModelConfig& cfg, const ModelState& state, const ScalarField& u0);

/// The truncated quadratic objective
///   ||u - u0||^2/2 + (mu/2) sum min(|grad u|^2, lambda/mu)
/// (per component for the anisotropic variant). Lower-bounds the gr/gy
/// energies at every iterate when evaluated with the same scheme.
double truncated_objective(const ScalarField& u, const ScalarField& u0,
                           double mu, double lambda, Isotropy isotropy,
                           Scheme scheme = Scheme::nffd);

// ---------------------------------------------------------------------------
// Per-pixel auxiliary updates (exact proximal minimizers)

namespace pixel {

// b <- clamp_[0,1](b_prev + 1 - coef*|grad u|^2), coef = mu/lambda.
inline double gr_b(double b_prev, double gsq, double coef) {
    const double b = b_prev + 1.0 - coef * gsq;
    return b < 0.0 ? 0.0 : (b > 1.0 ? 1.0 : b);
}

// Positive root of the depressed cubic x^3 + p x - 1 = 0 with
// p = xi + 1 - b_prev >= 0, via the closed-form radical expression;
// returns b = x^2 in (0, 1]. For large p the two cube roots nearly cancel,
// so the radical value is polished with one Newton step before squaring.
inline double gm_b(double b_prev, double xi) {
    const double p = xi + 1.0 - b_prev;
    const double sq = std::sqrt(0.25 + p * p * p / 27.0);
    double x = std::cbrt(0.5 + sq) + std::cbrt(0.5 - sq);
    x -= (x * (x * x + p) - 1.0) / (3.0 * x * x + p);
    if (x > 1.0) x = 1.0;
    return x * x;
}

// Positive root of b^2 + a b - 1 = 0 with a = xi + 1 - b_prev >= 0, in the
// subtraction-free form 2 / (a + sqrt(a^2 + 4)).
inline double hl_b(double b_prev, double xi) {
    const double a = xi + 1.0 - b_prev;
    return 2.0 / (a + std::sqrt(a * a + 4.0));
}

// Scale factor of the three-branch shrinkage: the minimizer of
// h_a*(l) + (1/(2 tau)) (l - lhat)^2 is scale * lhat.
inline double gy_shrink_scale(double mag, double tau, double sqrt_a) {
    if (mag <= tau * sqrt_a) return 0.0;
    if (mag < (1.0 + tau) * sqrt_a) return 1.0 - tau * sqrt_a / mag;
    return 1.0 / (1.0 + tau);
}

}  // namespace pixel

// ---------------------------------------------------------------------------
// Field-level auxiliary updates

Aux update_b_gr(const Aux& b_prev, const ScalarField& u, double mu, double lambda,
                Isotropy isotropy, Scheme scheme = Scheme::nffd, bool lambda_over_mu = false);
Aux update_b_gm(const Aux& b_prev, const ScalarField& u, double mu, double lambda,
                Isotropy isotropy, Scheme scheme = Scheme::nffd);
Aux update_b_hl(const Aux& b_prev, const ScalarField& u, double mu, double lambda,
                Isotropy isotropy, Scheme scheme = Scheme::nffd);
Aux update_l_gy(const Aux& l_prev, const ScalarField& u, double mu, double lambda,
                double kappa, Isotropy isotropy);

/// Dispatch to the model's closed-form auxiliary update (not for ms, whose
/// s-step is itself a preconditioned linear solve).
Aux update_aux(const ModelConfig& cfg, const Aux& prev, const ScalarField& u);

// ---------------------------------------------------------------------------
// Linear subproblem coefficients

/// Coefficient fields and right-hand side of the u-step system
/// gamma*u + div*(B grad u) = rhs derived from the model energy.
struct StepSystem {
    ScalarField gamma, d1, d2, rhs;
};

StepSystem u_step_coefficients(const ModelConfig& cfg, const ModelState& state,
                               const ScalarField& u0);

/// The ms edge-indicator step: reaction 2*alpha*|grad u|^2 + lambda/(2 eps)
/// plus the proximal weight, diffusion 2*lambda*eps, right-hand side
/// lambda/(2 eps) + gamma_prox * s_prev.
StepSystem s_step_coefficients(const ModelConfig& cfg, const ScalarField& u,
                               const ScalarField& s_prev);

}  // namespace hq

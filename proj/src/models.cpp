#include "hq/models.hpp"

#include <limits>

#include "hq/reduce.hpp"

namespace hq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ScalarField gsq(const ScalarField& u, GradSqMode mode, Scheme scheme) {
    return scheme == Scheme::sffd ? grad_sq_sym(u, mode) : grad_sq(u, mode);
}

double data_term(const ScalarField& u, const ScalarField& u0) {
    require_same_shape(u, u0, "energy data term");
    return 0.5 * sum_sq_diff(u.span(), u0.span());
}

// Dual of the quadratic-or-constant hinge; zero at l = 0.
inline double gy_H(double mag, double a, double sqrt_a) {
    return mag <= sqrt_a ? sqrt_a * mag - 0.5 * mag * mag : 0.5 * a;
}

template <class Fn>
double pixel_sum(int m, int n, Fn&& f) {
    ScalarField contrib(m, n);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) contrib(i, j) = f(i, j);
    return sum(contrib.span());
}

const ScalarField& scalar_aux(const Aux& a, const char* what) {
    if (!std::holds_alternative<ScalarField>(a))
        throw std::invalid_argument(std::string(what) + ": expected scalar auxiliary");
    return std::get<ScalarField>(a);
}

const VectorField& vector_aux(const Aux& a, const char* what) {
    if (!std::holds_alternative<VectorField>(a))
        throw std::invalid_argument(std::string(what) + ": expected two-component auxiliary");
    return std::get<VectorField>(a);
}

}  // namespace

const char* to_string(Model m) {
    switch (m) {
        case Model::gr: return "gr";
        case Model::gy: return "gy";
        case Model::gm: return "gm";
        case Model::hl: return "hl";
        case Model::ms: return "ms";
    }
    return "?";
}

void ModelConfig::validate() const {
    if (!(mu > 0.0)) throw std::invalid_argument("ModelConfig: mu must be positive");
    if (!(lambda > 0.0)) throw std::invalid_argument("ModelConfig: lambda must be positive");
    if (model == Model::gy && !(kappa_eff() > 0.0))
        throw std::invalid_argument("ModelConfig: kappa must be positive");
    if (model == Model::ms) {
        if (isotropy != Isotropy::iso)
            throw std::invalid_argument("ModelConfig: the ms model is isotropic only");
        if (!(alpha > 0.0)) throw std::invalid_argument("ModelConfig: alpha must be positive");
        if (!(epsilon > 0.0)) throw std::invalid_argument("ModelConfig: epsilon must be positive");
        if (!(gamma_prox > 0.0))
            throw std::invalid_argument("ModelConfig: gamma_prox must be positive");
    }
    sweep.validate();
}

bool aux_is_vector(const ModelConfig& cfg) {
    if (cfg.model == Model::gy) return true;
    if (cfg.model == Model::ms) return false;
    return cfg.isotropy == Isotropy::aniso;
}

Aux initial_aux(const ModelConfig& cfg, int rows, int cols) {
    switch (cfg.model) {
        case Model::gy: return VectorField(rows, cols, 0.0);
        case Model::ms: return ScalarField(rows, cols, 1.0);
        default:
            if (cfg.isotropy == Isotropy::aniso) return VectorField(rows, cols, 1.0);
            return ScalarField(rows, cols, 1.0);
    }
}

double aux_step_norm(const Aux& a, const Aux& b) {
    if (std::holds_alternative<ScalarField>(a)) {
        const auto& fa = std::get<ScalarField>(a);
        const auto& fb = scalar_aux(b, "aux_step_norm");
        return std::sqrt(sum_sq_diff(fa.span(), fb.span()));
    }
    const auto& va = std::get<VectorField>(a);
    const auto& vb = vector_aux(b, "aux_step_norm");
    return std::sqrt(sum_sq_diff(va.x.span(), vb.x.span()) +
                     sum_sq_diff(va.y.span(), vb.y.span()));
}

bool aux_finite(const Aux& a) {
    if (std::holds_alternative<ScalarField>(a)) return std::get<ScalarField>(a).is_finite();
    const auto& v = std::get<VectorField>(a);
    return v.x.is_finite() && v.y.is_finite();
}

// ---------------------------------------------------------------------------
// Energies

double energy(const ModelConfig& cfg, const ModelState& state, const ScalarField& u0) {
    const ScalarField& u = state.u;
    const int m = u.rows(), n = u.cols();
    const double D = data_term(u, u0);
    const double mu = cfg.mu, lambda = cfg.lambda;
    const Scheme sch = cfg.sweep.scheme;

    switch (cfg.model) {
        case Model::gr: {
            const double coef = mu / lambda;
            if (cfg.isotropy == Isotropy::iso) {
                const auto& b = scalar_aux(state.aux, "energy[gr]");
                for (std::size_t k = 0; k < b.size(); ++k)
                    if (b[k] < 0.0 || b[k] > 1.0) return kInf;
                const ScalarField g = gsq(u, GradSqMode::isotropic, sch);
                return D + 0.5 * lambda * pixel_sum(m, n, [&](int i, int j) {
                           return b(i, j) * (coef * g(i, j) - 1.0) + 1.0;
                       });
            }
            const auto& b = vector_aux(state.aux, "energy[gr]");
            for (std::size_t k = 0; k < b.x.size(); ++k) {
                if (b.x[k] < 0.0 || b.x[k] > 1.0) return kInf;
                if (b.y[k] < 0.0 || b.y[k] > 1.0) return kInf;
            }
            const ScalarField g1 = gsq(u, GradSqMode::component1, sch);
            const ScalarField g2 = gsq(u, GradSqMode::component2, sch);
            return D + 0.5 * lambda * pixel_sum(m, n, [&](int i, int j) {
                       return b.x(i, j) * (coef * g1(i, j) - 1.0) + 1.0 +
                              b.y(i, j) * (coef * g2(i, j) - 1.0) + 1.0;
                   });
        }
        case Model::gy: {
            const auto& l = vector_aux(state.aux, "energy[gy]");
            const double a = lambda / mu, sqrt_a = std::sqrt(a);
            const VectorField g = forward_grad(u);
            if (cfg.isotropy == Isotropy::iso) {
                return D + pixel_sum(m, n, [&](int i, int j) {
                           const double dx = g.x(i, j) - l.x(i, j);
                           const double dy = g.y(i, j) - l.y(i, j);
                           const double mag =
                               std::sqrt(l.x(i, j) * l.x(i, j) + l.y(i, j) * l.y(i, j));
                           return 0.5 * mu * (dx * dx + dy * dy) + mu * gy_H(mag, a, sqrt_a);
                       });
            }
            return D + pixel_sum(m, n, [&](int i, int j) {
                       const double dx = g.x(i, j) - l.x(i, j);
                       const double dy = g.y(i, j) - l.y(i, j);
                       return 0.5 * mu * (dx * dx + dy * dy) +
                              mu * (gy_H(std::abs(l.x(i, j)), a, sqrt_a) +
                                    gy_H(std::abs(l.y(i, j)), a, sqrt_a));
                   });
        }
        case Model::gm:
        case Model::hl: {
            const bool is_gm = cfg.model == Model::gm;
            auto penalty = [&](double b, double gsq) {
                // gm: b*xi + b - 2 sqrt(b) + 1;  hl: b*xi + b - log(b) - 1
                const double xi = gsq / lambda;
                return is_gm ? b * xi + b - 2.0 * std::sqrt(b) + 1.0
                             : b * xi + b - std::log(b) - 1.0;
            };
            auto in_domain = [&](double b) { return is_gm ? b >= 0.0 : b > 0.0; };
            if (cfg.isotropy == Isotropy::iso) {
                const auto& b = scalar_aux(state.aux, "energy[gm/hl]");
                for (std::size_t k = 0; k < b.size(); ++k)
                    if (!in_domain(b[k])) return kInf;
                const ScalarField g = gsq(u, GradSqMode::isotropic, sch);
                return D + 0.5 * mu * pixel_sum(m, n, [&](int i, int j) {
                           return penalty(b(i, j), g(i, j));
                       });
            }
            const auto& b = vector_aux(state.aux, "energy[gm/hl]");
            for (std::size_t k = 0; k < b.x.size(); ++k)
                if (!in_domain(b.x[k]) || !in_domain(b.y[k])) return kInf;
            const ScalarField g1 = gsq(u, GradSqMode::component1, sch);
            const ScalarField g2 = gsq(u, GradSqMode::component2, sch);
            return D + 0.5 * mu * pixel_sum(m, n, [&](int i, int j) {
                       return penalty(b.x(i, j), g1(i, j)) + penalty(b.y(i, j), g2(i, j));
                   });
        }
        case Model::ms: {
            const auto& s = scalar_aux(state.aux, "energy[ms]");
            const ScalarField gu = gsq(u, GradSqMode::isotropic, sch);
            const ScalarField gs = grad_sq(s, GradSqMode::isotropic);
            const double inv4e = 1.0 / (4.0 * cfg.epsilon);
            return D + pixel_sum(m, n, [&](int i, int j) {
                       const double sm1 = s(i, j) - 1.0;
                       return cfg.alpha * s(i, j) * s(i, j) * gu(i, j) +
                              lambda * (cfg.epsilon * gs(i, j) + inv4e * sm1 * sm1);
                   });
        }
    }
    throw std::logic_error("energy: unknown model");
}

double truncated_objective(const ScalarField& u, const ScalarField& u0,
                           double mu, double lambda, Isotropy isotropy, Scheme scheme) {
    const double cap = lambda / mu;
    const int m = u.rows(), n = u.cols();
    const double D = data_term(u, u0);
    if (isotropy == Isotropy::iso) {
        const ScalarField g = gsq(u, GradSqMode::isotropic, scheme);
        return D + 0.5 * mu * pixel_sum(m, n, [&](int i, int j) {
                   return std::min(g(i, j), cap);
               });
    }
    const ScalarField g1 = gsq(u, GradSqMode::component1, scheme);
    const ScalarField g2 = gsq(u, GradSqMode::component2, scheme);
    return D + 0.5 * mu * pixel_sum(m, n, [&](int i, int j) {
               return std::min(g1(i, j), cap) + std::min(g2(i, j), cap);
           });
}

// ---------------------------------------------------------------------------
// Auxiliary updates

namespace {

template <class PixelFn>
ScalarField map_field(const ScalarField& a, const ScalarField& b, PixelFn&& f) {
    const int m = a.rows(), n = a.cols();
    ScalarField out(m, n);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = f(a(i, j), b(i, j));
    return out;
}

template <class PixelFn>
Aux map_b_update(const Aux& b_prev, const ScalarField& u, Isotropy isotropy, Scheme scheme,
                 PixelFn&& f) {
    if (isotropy == Isotropy::iso) {
        const auto& b = scalar_aux(b_prev, "aux update");
        require_same_shape(b, u, "aux update");
        return map_field(b, gsq(u, GradSqMode::isotropic, scheme), f);
    }
    const auto& b = vector_aux(b_prev, "aux update");
    require_same_shape(b.x, u, "aux update");
    return VectorField(map_field(b.x, gsq(u, GradSqMode::component1, scheme), f),
                       map_field(b.y, gsq(u, GradSqMode::component2, scheme), f));
}

}  // namespace

Aux update_b_gr(const Aux& b_prev, const ScalarField& u, double mu, double lambda,
                Isotropy isotropy, Scheme scheme, bool lambda_over_mu) {
    const double coef = lambda_over_mu ? lambda / mu : mu / lambda;
    return map_b_update(b_prev, u, isotropy, scheme,
                        [coef](double b, double g) { return pixel::gr_b(b, g, coef); });
}

Aux update_b_gm(const Aux& b_prev, const ScalarField& u, double mu, double lambda,
                Isotropy isotropy, Scheme scheme) {
    (void)mu;
    return map_b_update(b_prev, u, isotropy, scheme, [lambda](double b, double g) {
        return pixel::gm_b(b, g / lambda);
    });
}

Aux update_b_hl(const Aux& b_prev, const ScalarField& u, double mu, double lambda,
                Isotropy isotropy, Scheme scheme) {
    (void)mu;
    return map_b_update(b_prev, u, isotropy, scheme, [lambda](double b, double g) {
        return pixel::hl_b(b, g / lambda);
    });
}

Aux update_l_gy(const Aux& l_prev, const ScalarField& u, double mu, double lambda,
                double kappa, Isotropy isotropy) {
    const auto& l = vector_aux(l_prev, "update_l_gy");
    require_same_shape(l.x, u, "update_l_gy");
    const double tau = mu / kappa;
    const double sqrt_a = std::sqrt(lambda / mu);
    const VectorField g = forward_grad(u);
    const int m = u.rows(), n = u.cols();
    VectorField out(m, n);

    if (isotropy == Isotropy::iso) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) {
                const double hx = l.x(i, j) + tau * g.x(i, j);
                const double hy = l.y(i, j) + tau * g.y(i, j);
                const double s =
                    pixel::gy_shrink_scale(std::sqrt(hx * hx + hy * hy), tau, sqrt_a);
                out.x(i, j) = s * hx;
                out.y(i, j) = s * hy;
            }
        }
    } else {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) {
                const double hx = l.x(i, j) + tau * g.x(i, j);
                const double hy = l.y(i, j) + tau * g.y(i, j);
                out.x(i, j) = pixel::gy_shrink_scale(std::abs(hx), tau, sqrt_a) * hx;
                out.y(i, j) = pixel::gy_shrink_scale(std::abs(hy), tau, sqrt_a) * hy;
            }
        }
    }
    return out;
}

Aux update_aux(const ModelConfig& cfg, const Aux& prev, const ScalarField& u) {
    switch (cfg.model) {
        case Model::gr:
            return update_b_gr(prev, u, cfg.mu, cfg.lambda, cfg.isotropy, cfg.sweep.scheme,
                               cfg.gr_lambda_over_mu);
        case Model::gm:
            return update_b_gm(prev, u, cfg.mu, cfg.lambda, cfg.isotropy, cfg.sweep.scheme);
        case Model::hl:
            return update_b_hl(prev, u, cfg.mu, cfg.lambda, cfg.isotropy, cfg.sweep.scheme);
        case Model::gy:
            return update_l_gy(prev, u, cfg.mu, cfg.lambda, cfg.kappa_eff(), cfg.isotropy);
        case Model::ms:
            throw std::logic_error("update_aux: the ms edge indicator is a linear solve");
    }
    throw std::logic_error("update_aux: unknown model");
}

// ---------------------------------------------------------------------------
// Linear subproblem coefficients

namespace {

ScalarField scaled(const ScalarField& f, double c) {
    const int m = f.rows(), n = f.cols();
    ScalarField out(m, n);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = c * f(i, j);
    return out;
}

}  // namespace

StepSystem u_step_coefficients(const ModelConfig& cfg, const ModelState& state,
                               const ScalarField& u0) {
    const int m = u0.rows(), n = u0.cols();
    StepSystem sys;
    sys.gamma = ScalarField(m, n, 1.0);

    switch (cfg.model) {
        case Model::gy: {
            const auto& l = vector_aux(state.aux, "u_step[gy]");
            sys.d1 = ScalarField(m, n, cfg.mu);
            sys.d2 = ScalarField(m, n, cfg.mu);
            const ScalarField div_l = backward_div(l);
            sys.rhs = ScalarField(m, n);
#pragma omp parallel for schedule(static)
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j) sys.rhs(i, j) = u0(i, j) - cfg.mu * div_l(i, j);
            return sys;
        }
        case Model::gr:
        case Model::gm:
        case Model::hl: {
            const double c = cfg.model == Model::gr ? cfg.mu : cfg.mu / cfg.lambda;
            if (cfg.isotropy == Isotropy::iso) {
                const auto& b = scalar_aux(state.aux, "u_step");
                sys.d1 = scaled(b, c);
                sys.d2 = sys.d1;
            } else {
                const auto& b = vector_aux(state.aux, "u_step");
                sys.d1 = scaled(b.x, c);
                sys.d2 = scaled(b.y, c);
            }
            sys.rhs = u0;
            return sys;
        }
        case Model::ms: {
            const auto& s = scalar_aux(state.aux, "u_step[ms]");
            ScalarField d(m, n);
#pragma omp parallel for schedule(static)
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j) d(i, j) = 2.0 * cfg.alpha * s(i, j) * s(i, j);
            sys.d1 = d;
            sys.d2 = std::move(d);
            sys.rhs = u0;
            return sys;
        }
    }
    throw std::logic_error("u_step_coefficients: unknown model");
}

StepSystem s_step_coefficients(const ModelConfig& cfg, const ScalarField& u,
                               const ScalarField& s_prev) {
    if (cfg.model != Model::ms)
        throw std::invalid_argument("s_step_coefficients: only defined for the ms model");
    require_same_shape(u, s_prev, "s_step_coefficients");
    const int m = u.rows(), n = u.cols();
    const double reaction0 = 0.5 * cfg.lambda / cfg.epsilon;

    StepSystem sys;
    sys.gamma = ScalarField(m, n);
    sys.rhs = ScalarField(m, n);
    const ScalarField g = gsq(u, GradSqMode::isotropic, cfg.sweep.scheme);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            sys.gamma(i, j) = 2.0 * cfg.alpha * g(i, j) + reaction0 + cfg.gamma_prox;
            sys.rhs(i, j) = reaction0 + cfg.gamma_prox * s_prev(i, j);
        }
    }
    sys.d1 = ScalarField(m, n, 2.0 * cfg.lambda * cfg.epsilon);
    sys.d2 = sys.d1;
    return sys;
}

}  // namespace hq

#include "hq/grid.hpp"

#include <cmath>

namespace hq {

bool ScalarField::is_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

void require_same_shape(const ScalarField& a, const ScalarField& b, const char* what) {
    if (!a.same_shape(b))
        throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

void forward_grad(const ScalarField& u, VectorField& out) {
    const int m = u.rows(), n = u.cols();
    if (!out.x.same_shape(u)) out = VectorField(m, n);

#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            out.x(i, j) = (i < m - 1) ? u(i + 1, j) - u(i, j) : 0.0;
            out.y(i, j) = (j < n - 1) ? u(i, j + 1) - u(i, j) : 0.0;
        }
    }
}

VectorField forward_grad(const ScalarField& u) {
    VectorField out(u.rows(), u.cols());
    forward_grad(u, out);
    return out;
}

void backward_div(const VectorField& p, ScalarField& out) {
    if (!p.x.same_shape(p.y))
        throw std::invalid_argument("backward_div: component shape mismatch");
    const int m = p.rows(), n = p.cols();
    if (!out.same_shape(p.x)) out = ScalarField(m, n);

#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            double dx;
            if (i == 0)
                dx = p.x(0, j);
            else if (i == m - 1)
                dx = -p.x(m - 2, j);
            else
                dx = p.x(i, j) - p.x(i - 1, j);
            double dy;
            if (j == 0)
                dy = p.y(i, 0);
            else if (j == n - 1)
                dy = -p.y(i, n - 2);
            else
                dy = p.y(i, j) - p.y(i, j - 1);
            out(i, j) = dx + dy;
        }
    }
}

ScalarField backward_div(const VectorField& p) {
    ScalarField out(p.rows(), p.cols());
    backward_div(p, out);
    return out;
}

void tilde_grad(const ScalarField& u, VectorField& out) {
    const int m = u.rows(), n = u.cols();
    if (!out.x.same_shape(u)) out = VectorField(m, n);

#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            out.x(i, j) = (i > 0) ? u(i, j) - u(i - 1, j) : 0.0;
            out.y(i, j) = (j > 0) ? u(i, j) - u(i, j - 1) : 0.0;
        }
    }
}

VectorField tilde_grad(const ScalarField& u) {
    VectorField out(u.rows(), u.cols());
    tilde_grad(u, out);
    return out;
}

void tilde_div(const VectorField& p, ScalarField& out) {
    if (!p.x.same_shape(p.y))
        throw std::invalid_argument("tilde_div: component shape mismatch");
    const int m = p.rows(), n = p.cols();
    if (!out.same_shape(p.x)) out = ScalarField(m, n);

#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            double dx;
            if (i == 0)
                dx = p.x(1, j);
            else if (i == m - 1)
                dx = -p.x(m - 1, j);
            else
                dx = p.x(i + 1, j) - p.x(i, j);
            double dy;
            if (j == 0)
                dy = p.y(i, 1);
            else if (j == n - 1)
                dy = -p.y(i, n - 1);
            else
                dy = p.y(i, j + 1) - p.y(i, j);
            out(i, j) = dx + dy;
        }
    }
}

ScalarField tilde_div(const VectorField& p) {
    ScalarField out(p.rows(), p.cols());
    tilde_div(p, out);
    return out;
}

void grad_sq(const ScalarField& u, GradSqMode mode, ScalarField& out) {
    const int m = u.rows(), n = u.cols();
    if (!out.same_shape(u)) out = ScalarField(m, n);

#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            const double gx = (i < m - 1) ? u(i + 1, j) - u(i, j) : 0.0;
            const double gy = (j < n - 1) ? u(i, j + 1) - u(i, j) : 0.0;
            switch (mode) {
                case GradSqMode::isotropic: out(i, j) = gx * gx + gy * gy; break;
                case GradSqMode::component1: out(i, j) = gx * gx; break;
                case GradSqMode::component2: out(i, j) = gy * gy; break;
            }
        }
    }
}

ScalarField grad_sq(const ScalarField& u, GradSqMode mode) {
    ScalarField out(u.rows(), u.cols());
    grad_sq(u, mode, out);
    return out;
}

void grad_sq_sym(const ScalarField& u, GradSqMode mode, ScalarField& out) {
    const int m = u.rows(), n = u.cols();
    if (!out.same_shape(u)) out = ScalarField(m, n);

#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            const double fx = (i < m - 1) ? u(i + 1, j) - u(i, j) : 0.0;
            const double fy = (j < n - 1) ? u(i, j + 1) - u(i, j) : 0.0;
            const double bx = (i > 0) ? u(i, j) - u(i - 1, j) : 0.0;
            const double by = (j > 0) ? u(i, j) - u(i, j - 1) : 0.0;
            const double gx = 0.5 * (fx * fx + bx * bx);
            const double gy = 0.5 * (fy * fy + by * by);
            switch (mode) {
                case GradSqMode::isotropic: out(i, j) = gx + gy; break;
                case GradSqMode::component1: out(i, j) = gx; break;
                case GradSqMode::component2: out(i, j) = gy; break;
            }
        }
    }
}

ScalarField grad_sq_sym(const ScalarField& u, GradSqMode mode) {
    ScalarField out(u.rows(), u.cols());
    grad_sq_sym(u, mode, out);
    return out;
}

}  // namespace hq

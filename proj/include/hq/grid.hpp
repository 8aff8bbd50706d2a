#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace hq {

/// A rows x cols grid of doubles in row-major order.
///
/// Convention: i indexes rows (the "x" direction of the difference
/// operators), j indexes columns (the "y" direction). Indexing here is
/// zero-based; the operator case definitions below are stated for
/// one-based (i,j) and shifted internally.
class ScalarField {
public:
    ScalarField() = default;

    ScalarField(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols),
          data_(check_dims(rows, cols), fill) {}

    static ScalarField from_data(int rows, int cols, std::vector<double> data) {
        if (data.size() != check_dims(rows, cols))
            throw std::invalid_argument("ScalarField: data size does not match rows*cols");
        ScalarField f;
        f.rows_ = rows;
        f.cols_ = cols;
        f.data_ = std::move(data);
        return f;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& operator()(int i, int j) { return data_[idx(i, j)]; }
    double operator()(int i, int j) const { return data_[idx(i, j)]; }

    double& operator[](std::size_t k) { return data_[k]; }
    double operator[](std::size_t k) const { return data_[k]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::span<const double> span() const { return data_; }
    std::span<double> span() { return data_; }

    bool same_shape(const ScalarField& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_;
    }

    void fill(double v) { data_.assign(data_.size(), v); }

    /// True iff every entry is finite (no NaN/Inf).
    bool is_finite() const;

    friend bool operator==(const ScalarField& a, const ScalarField& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    static std::size_t check_dims(int rows, int cols) {
        if (rows < 2 || cols < 2)
            throw std::invalid_argument("ScalarField: rows and cols must both be >= 2");
        return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    }
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * cols_ + j;
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

/// A pair of same-shape scalar fields (gradients, two-component auxiliaries).
struct VectorField {
    ScalarField x;  // i-direction component
    ScalarField y;  // j-direction component

    VectorField() = default;
    VectorField(ScalarField xc, ScalarField yc) : x(std::move(xc)), y(std::move(yc)) {
        if (!x.same_shape(y))
            throw std::invalid_argument("VectorField: components must have identical shape");
    }
    VectorField(int rows, int cols, double fill = 0.0)
        : x(rows, cols, fill), y(rows, cols, fill) {}

    int rows() const { return x.rows(); }
    int cols() const { return x.cols(); }
    bool same_shape(const VectorField& o) const { return x.same_shape(o.x); }

    friend bool operator==(const VectorField& a, const VectorField& b) {
        return a.x == b.x && a.y == b.y;
    }
};

void require_same_shape(const ScalarField& a, const ScalarField& b, const char* what);

// Forward difference gradient with zero at the last index:
//   (grad u).x(i,j) = u(i+1,j) - u(i,j)  for i < m, 0 at i = m
//   (grad u).y(i,j) = u(i,j+1) - u(i,j)  for j < n, 0 at j = n
VectorField forward_grad(const ScalarField& u);
void forward_grad(const ScalarField& u, VectorField& out);

// Backward-difference divergence, the (negated) adjoint of forward_grad:
// <forward_grad(u), p> + <u, backward_div(p)> = 0.
//   div_x p(i,j) = p1(1,j) at i=1; p1(i,j)-p1(i-1,j) inside; -p1(m-1,j) at i=m
// and likewise in j for p2; result is the sum of both parts.
ScalarField backward_div(const VectorField& p);
void backward_div(const VectorField& p, ScalarField& out);

// Companion operators used by the symmetric discretization. tilde_grad is a
// backward difference that is zero at the first index; tilde_div is its
// negated adjoint (forward difference with special first/last rows):
//   tg.x(i,j) = 0 at i=1; u(i,j)-u(i-1,j) for i > 1
//   td_x p(i,j) = p1(2,j) at i=1; p1(i+1,j)-p1(i,j) inside; -p1(m,j) at i=m
VectorField tilde_grad(const ScalarField& u);
void tilde_grad(const ScalarField& u, VectorField& out);
ScalarField tilde_div(const VectorField& p);
void tilde_div(const VectorField& p, ScalarField& out);

enum class GradSqMode { isotropic, component1, component2 };

// Pointwise squared forward-difference gradient: |grad u|^2, or a single
// squared component.
ScalarField grad_sq(const ScalarField& u, GradSqMode mode = GradSqMode::isotropic);
void grad_sq(const ScalarField& u, GradSqMode mode, ScalarField& out);

// Symmetrized squared gradient: the average of the forward and tilde
// backward squared differences per component. This is the quadratic form
// whose Euler-Lagrange operator the sffd stencil assembles, so energies of
// sffd runs are evaluated with it.
ScalarField grad_sq_sym(const ScalarField& u, GradSqMode mode = GradSqMode::isotropic);
void grad_sq_sym(const ScalarField& u, GradSqMode mode, ScalarField& out);

}  // namespace hq

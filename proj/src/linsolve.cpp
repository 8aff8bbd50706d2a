#include "hq/linsolve.hpp"

#include <cmath>

#include "hq/reduce.hpp"

namespace hq {

namespace {

// y += a*x
void axpy(double a, const ScalarField& x, ScalarField& y) {
    const std::size_t N = x.size();
    double* yd = y.data();
    const double* xd = x.data();
#pragma omp parallel for schedule(static)
    for (long long k = 0; k < static_cast<long long>(N); ++k)
        yd[k] += a * xd[k];
}

// p = r + beta*p
void xpby(const ScalarField& r, double beta, ScalarField& p) {
    const std::size_t N = r.size();
    double* pd = p.data();
    const double* rd = r.data();
#pragma omp parallel for schedule(static)
    for (long long k = 0; k < static_cast<long long>(N); ++k)
        pd[k] = rd[k] + beta * pd[k];
}

}  // namespace

CgReport cg(const FivePointStencil& st, const ScalarField& z, const ScalarField& u0,
            double rel_tol, int max_iters) {
    require_same_shape(z, st.center(), "cg");
    require_same_shape(u0, st.center(), "cg");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("cg: rel_tol must be positive");
    if (max_iters < 0) throw std::invalid_argument("cg: max_iters must be nonnegative");

    CgReport rep;
    rep.solution = u0;

    ScalarField r(z.rows(), z.cols()), Ap(z.rows(), z.cols());
    st.apply(rep.solution, r);
    ++rep.matvec_count;
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = z[k] - r[k];

    double rr = sum_sq(r.span());
    const double target = rel_tol * std::sqrt(rr);
    rep.final_residual = std::sqrt(rr);
    if (rep.final_residual <= target || rep.final_residual == 0.0) {
        rep.status = CgStatus::converged;
        return rep;
    }

    ScalarField p = r;
    for (int it = 1; it <= max_iters; ++it) {
        st.apply(p, Ap);
        ++rep.matvec_count;
        const double pAp = dot(p.span(), Ap.span());
        if (!(pAp > 0.0)) {
            rep.status = CgStatus::breakdown;
            rep.iterations = it - 1;
            rep.final_residual = std::sqrt(rr);
            return rep;
        }
        const double alpha = rr / pAp;
        axpy(alpha, p, rep.solution);
        axpy(-alpha, Ap, r);
        const double rr_new = sum_sq(r.span());
        rep.iterations = it;
        rep.final_residual = std::sqrt(rr_new);
        if (rep.final_residual <= target) {
            rep.status = CgStatus::converged;
            return rep;
        }
        xpby(r, rr_new / rr, p);
        rr = rr_new;
    }
    rep.status = CgStatus::max_iterations;
    return rep;
}

ScalarField dense_solve(const FivePointStencil& st, const ScalarField& z) {
    require_same_shape(z, st.center(), "dense_solve");
    const Eigen::MatrixXd M = st.to_dense();
    const Eigen::Index N = M.rows();
    Eigen::Map<const Eigen::VectorXd> b(z.data(), N);
    const Eigen::VectorXd x = M.ldlt().solve(b);
    const double resid = (M * x - b).norm();
    if (!(resid <= 1e-10 * b.norm()) && b.norm() > 0.0)
        throw std::runtime_error("dense_solve: system is singular or badly conditioned");

    ScalarField out(z.rows(), z.cols());
    Eigen::Map<Eigen::VectorXd>(out.data(), N) = x;
    return out;
}

}  // namespace hq

#include "hq/stencil.hpp"

namespace hq {

const char* to_string(Scheme s) {
    return s == Scheme::nffd ? "nffd" : "sffd";
}

namespace {

void check_assembly_inputs(const ScalarField& gamma, const ScalarField& d1,
                           const ScalarField& d2) {
    require_same_shape(gamma, d1, "stencil assembly");
    require_same_shape(gamma, d2, "stencil assembly");
    for (std::size_t k = 0; k < gamma.size(); ++k) {
        if (!(gamma[k] > 0.0))
            throw std::invalid_argument("stencil assembly: gamma must be strictly positive");
        if (d1[k] < 0.0 || d2[k] < 0.0)
            throw std::invalid_argument("stencil assembly: coefficient fields must be nonnegative");
    }
}

}  // namespace

FivePointStencil FivePointStencil::assemble(Scheme scheme, const ScalarField& gamma,
                                            const ScalarField& d1, const ScalarField& d2) {
    check_assembly_inputs(gamma, d1, d2);
    const int m = gamma.rows(), n = gamma.cols();

    FivePointStencil st;
    st.center_ = ScalarField(m, n);
    st.north_ = ScalarField(m, n);
    st.south_ = ScalarField(m, n);
    st.east_ = ScalarField(m, n);
    st.west_ = ScalarField(m, n);

    const bool avg = scheme == Scheme::sffd;
    // Coupling between (i,j) and (i+1,j): d1(i,j) for nffd, the average of
    // the two adjacent samples for sffd; analogously along j with d2.
    auto c1 = [&](int i, int j) {
        return avg ? 0.5 * (d1(i, j) + d1(i + 1, j)) : d1(i, j);
    };
    auto c2 = [&](int i, int j) {
        return avg ? 0.5 * (d2(i, j) + d2(i, j + 1)) : d2(i, j);
    };

#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            const double cs = (i < m - 1) ? c1(i, j) : 0.0;
            const double cn = (i > 0) ? c1(i - 1, j) : 0.0;
            const double ce = (j < n - 1) ? c2(i, j) : 0.0;
            const double cw = (j > 0) ? c2(i, j - 1) : 0.0;
            st.south_(i, j) = -cs;
            st.north_(i, j) = -cn;
            st.east_(i, j) = -ce;
            st.west_(i, j) = -cw;
            st.center_(i, j) = gamma(i, j) + cs + cn + ce + cw;
        }
    }
    return st;
}

FivePointStencil FivePointStencil::assemble(Scheme scheme, double gamma,
                                            const ScalarField& d1, const ScalarField& d2) {
    return assemble(scheme, ScalarField(d1.rows(), d1.cols(), gamma), d1, d2);
}

void FivePointStencil::apply(const ScalarField& u, ScalarField& out) const {
    require_same_shape(u, center_, "stencil apply");
    const int m = rows(), n = cols();
    if (!out.same_shape(u)) out = ScalarField(m, n);

#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            double acc = center_(i, j) * u(i, j);
            if (i > 0) acc += north_(i, j) * u(i - 1, j);
            if (i < m - 1) acc += south_(i, j) * u(i + 1, j);
            if (j > 0) acc += west_(i, j) * u(i, j - 1);
            if (j < n - 1) acc += east_(i, j) * u(i, j + 1);
            out(i, j) = acc;
        }
    }
}

ScalarField FivePointStencil::apply(const ScalarField& u) const {
    ScalarField out(rows(), cols());
    apply(u, out);
    return out;
}

Eigen::MatrixXd FivePointStencil::to_dense() const {
    const int m = rows(), n = cols();
    const std::size_t N = static_cast<std::size_t>(m) * n;
    if (N > 4096)
        throw std::invalid_argument("to_dense: grid too large (m*n must be <= 4096)");

    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N),
                                              static_cast<Eigen::Index>(N));
    auto row = [n](int i, int j) { return static_cast<Eigen::Index>(i) * n + j; };
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            const Eigen::Index k = row(i, j);
            M(k, k) = center_(i, j);
            if (i > 0) M(k, row(i - 1, j)) = north_(i, j);
            if (i < m - 1) M(k, row(i + 1, j)) = south_(i, j);
            if (j > 0) M(k, row(i, j - 1)) = west_(i, j);
            if (j < n - 1) M(k, row(i, j + 1)) = east_(i, j);
        }
    }
    return M;
}

}  // namespace hq

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "hq/stencil.hpp"
#include "oracles.hpp"

using namespace hq;

namespace {
std::mt19937_64 rng(777);
}

TEST_CASE("nffd constant-coefficient stencil is the shifted five-point Laplacian") {
    const int m = 4, n = 4;
    const ScalarField one(m, n, 1.0);
    const auto st = assemble_nffd(one, one, one);
    // interior pixel
    CHECK(st.center()(1, 2) == 5.0);
    CHECK(st.north()(1, 2) == -1.0);
    CHECK(st.south()(1, 2) == -1.0);
    CHECK(st.east()(1, 2) == -1.0);
    CHECK(st.west()(1, 2) == -1.0);
    // north-west corner: center 3, east and south -1, nothing else
    CHECK(st.center()(0, 0) == 3.0);
    CHECK(st.east()(0, 0) == -1.0);
    CHECK(st.south()(0, 0) == -1.0);
    CHECK(st.north()(0, 0) == 0.0);
    CHECK(st.west()(0, 0) == 0.0);
}

TEST_CASE("stencil symmetry as a matrix") {
    for (Scheme sch : {Scheme::nffd, Scheme::sffd}) {
        const int m = 4, n = 4;
        const ScalarField gamma = oracle::random_field(rng, m, n, 0.3, 2.0);
        const ScalarField d1 = oracle::random_field(rng, m, n, 0.0, 3.0);
        const ScalarField d2 = oracle::random_field(rng, m, n, 0.0, 3.0);
        const auto st = FivePointStencil::assemble(sch, gamma, d1, d2);
        // pairwise coefficient identities
        for (int i = 0; i + 1 < m; ++i)
            for (int j = 0; j < n; ++j) CHECK(st.south()(i, j) == st.north()(i + 1, j));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j + 1 < n; ++j) CHECK(st.east()(i, j) == st.west()(i, j + 1));
        // center dominates its row by exactly gamma
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                const double off = std::abs(st.north()(i, j)) + std::abs(st.south()(i, j)) +
                                   std::abs(st.east()(i, j)) + std::abs(st.west()(i, j));
                CHECK(st.center()(i, j) >= off + gamma(i, j) - 1e-14);
                CHECK(st.center()(i, j) > 0.0);
            }
        const Eigen::MatrixXd M = st.to_dense();
        CHECK((M - M.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("assembly matches the operator-composition dense oracle") {
    for (Scheme sch : {Scheme::nffd, Scheme::sffd}) {
        for (auto [m, n] : {std::pair{3, 3}, {4, 5}, {5, 5}}) {
            const ScalarField gamma = oracle::random_field(rng, m, n, 0.3, 2.0);
            const ScalarField d1 = oracle::random_field(rng, m, n, 0.0, 3.0);
            const ScalarField d2 = oracle::random_field(rng, m, n, 0.0, 3.0);
            const auto st = FivePointStencil::assemble(sch, gamma, d1, d2);
            const Eigen::MatrixXd ref = oracle::dense_operator(sch, gamma, d1, d2);
            CHECK((st.to_dense() - ref).cwiseAbs().maxCoeff() < 1e-13);
        }
    }
}

TEST_CASE("sffd averages adjacent coefficient samples") {
    const int m = 5, n = 4;
    ScalarField d1(m, n), d2(m, n, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) d1(i, j) = i + 1;  // one-based row index
    const auto st = assemble_sffd(ScalarField(m, n, 1.0), d1, d2);
    for (int i = 0; i + 1 < m; ++i)
        for (int j = 0; j < n; ++j) CHECK(st.south()(i, j) == -((i + 1) + 0.5));
}

TEST_CASE("constant coefficients: nffd and sffd agree bitwise") {
    std::uniform_real_distribution<double> cd(0.0, 5.0);
    for (int t = 0; t < 100; ++t) {
        const int m = 3 + static_cast<int>(rng() % 4);
        const int n = 3 + static_cast<int>(rng() % 4);
        const ScalarField gamma = oracle::random_field(rng, m, n, 0.1, 3.0);
        const ScalarField d1(m, n, cd(rng)), d2(m, n, cd(rng));
        CHECK(assemble_nffd(gamma, d1, d2) == assemble_sffd(gamma, d1, d2));
    }
}

TEST_CASE("apply agrees with the dense product and keeps constants") {
    for (Scheme sch : {Scheme::nffd, Scheme::sffd}) {
        const int m = 4, n = 4;
        const ScalarField gamma = oracle::random_field(rng, m, n, 0.3, 2.0);
        const ScalarField d1 = oracle::random_field(rng, m, n, 0.0, 3.0);
        const ScalarField d2 = oracle::random_field(rng, m, n, 0.0, 3.0);
        const auto st = FivePointStencil::assemble(sch, gamma, d1, d2);
        const Eigen::MatrixXd M = st.to_dense();

        const ScalarField u = oracle::random_field(rng, m, n, -1, 1);
        const ScalarField r = st.apply(u);
        CHECK((oracle::to_vec(r) - M * oracle::to_vec(u)).cwiseAbs().maxCoeff() < 1e-13);

        const ScalarField z = st.apply(ScalarField(m, n, 0.0));
        for (std::size_t k = 0; k < z.size(); ++k) CHECK(z[k] == 0.0);

        const double c = 0.9;
        const ScalarField rc = st.apply(ScalarField(m, n, c));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(rc(i, j) == doctest::Approx(gamma(i, j) * c).epsilon(1e-13));
    }
}

TEST_CASE("identity stencil with gamma 1 and apply(st, 1) = gamma") {
    const int m = 2, n = 2;
    const auto st = assemble_nffd(ScalarField(m, n, 1.0), ScalarField(m, n, 0.0),
                                  ScalarField(m, n, 0.0));
    CHECK(st.to_dense().isIdentity(0.0));

    const ScalarField gamma = oracle::random_field(rng, 3, 3, 0.5, 2.0);
    for (Scheme sch : {Scheme::nffd, Scheme::sffd}) {
        const auto s3 = FivePointStencil::assemble(sch, gamma,
                                                   oracle::random_field(rng, 3, 3, 0.0, 2.0),
                                                   oracle::random_field(rng, 3, 3, 0.0, 2.0));
        const ScalarField r = s3.apply(ScalarField(3, 3, 1.0));
        for (std::size_t k = 0; k < r.size(); ++k)
            CHECK(r[k] == doctest::Approx(gamma[k]).epsilon(1e-14));
    }
}

TEST_CASE("nffd 3x3 Laplacian plus identity has row sums equal to gamma") {
    const ScalarField one(3, 3, 1.0);
    const Eigen::MatrixXd M = assemble_nffd(one, one, one).to_dense();
    const Eigen::VectorXd rs = M.rowwise().sum();
    for (Eigen::Index k = 0; k < rs.size(); ++k) CHECK(rs(k) == doctest::Approx(1.0));
}

TEST_CASE("positive definiteness: smallest eigenvalue at least min gamma") {
    for (Scheme sch : {Scheme::nffd, Scheme::sffd}) {
        for (int t = 0; t < 10; ++t) {
            const int m = 4, n = 4;
            const ScalarField gamma = oracle::random_field(rng, m, n, 0.2, 1.5);
            const ScalarField d1 = oracle::random_field(rng, m, n, 0.0, 3.0);
            const ScalarField d2 = oracle::random_field(rng, m, n, 0.0, 3.0);
            double gmin = gamma[0];
            for (std::size_t k = 0; k < gamma.size(); ++k) gmin = std::min(gmin, gamma[k]);
            const Eigen::MatrixXd M = FivePointStencil::assemble(sch, gamma, d1, d2).to_dense();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
            CHECK(es.eigenvalues().minCoeff() >= gmin - 1e-12);
        }
    }
}

TEST_CASE("assembly rejects bad inputs") {
    const ScalarField one(3, 3, 1.0);
    CHECK_THROWS_AS(assemble_nffd(one, ScalarField(3, 4, 1.0), one), std::invalid_argument);
    ScalarField neg(3, 3, 1.0);
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(assemble_nffd(one, neg, one), std::invalid_argument);
    CHECK_THROWS_AS(assemble_nffd(ScalarField(3, 3, 0.0), one, one), std::invalid_argument);
    CHECK_THROWS_AS(assemble_nffd(one, one, one).apply(ScalarField(4, 4)),
                    std::invalid_argument);
}

TEST_CASE("to_dense refuses oversized grids") {
    const int m = 65, n = 65;  // 4225 > 4096
    const auto st = assemble_nffd(ScalarField(m, n, 1.0), ScalarField(m, n, 0.0),
                                  ScalarField(m, n, 0.0));
    CHECK_THROWS_AS(st.to_dense(), std::invalid_argument);
}

TEST_CASE("the dense symmetry oracle detects a corrupted coefficient") {
    const ScalarField one(3, 3, 1.0);
    Eigen::MatrixXd M = assemble_nffd(one, one, one).to_dense();
    M(0, 1) = -M(0, 1);  // injected sign flip
    CHECK((M - M.transpose()).cwiseAbs().maxCoeff() > 0.0);
}

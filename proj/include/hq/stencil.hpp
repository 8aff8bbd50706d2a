#pragma once

#include <Eigen/Dense>

#include "hq/grid.hpp"

namespace hq {

// Two discretizations of gamma*u + div*(B grad u) = z with homogeneous
// Neumann boundaries. nffd samples the coefficient fields at pixel
// locations; sffd averages adjacent samples (alpha1(i,j) = (d1(i,j) +
// d1(i+1,j))/2 and likewise for alpha2 along j). The two coincide whenever
// d1 and d2 are constant.
enum class Scheme { nffd, sffd };

const char* to_string(Scheme s);

/// Per-pixel center/N/S/E/W coefficients of the assembled operator.
/// Couplings that would reach outside the grid are exactly zero, so each
/// row sums to gamma at that pixel (the discrete zero-flux property).
class FivePointStencil {
public:
    FivePointStencil() = default;

    static FivePointStencil assemble(Scheme scheme, const ScalarField& gamma,
                                     const ScalarField& d1, const ScalarField& d2);
    static FivePointStencil assemble(Scheme scheme, double gamma,
                                     const ScalarField& d1, const ScalarField& d2);

    int rows() const { return center_.rows(); }
    int cols() const { return center_.cols(); }

    const ScalarField& center() const { return center_; }
    const ScalarField& north() const { return north_; }
    const ScalarField& south() const { return south_; }
    const ScalarField& east() const { return east_; }
    const ScalarField& west() const { return west_; }

    /// out(i,j) = center*u(i,j) + north*u(i-1,j) + south*u(i+1,j)
    ///          + west*u(i,j-1) + east*u(i,j+1), out-of-grid terms dropped.
    void apply(const ScalarField& u, ScalarField& out) const;
    ScalarField apply(const ScalarField& u) const;

    /// Dense (m*n)x(m*n) materialization with row-major pixel numbering.
    /// Verification oracle; limited to m*n <= 4096.
    Eigen::MatrixXd to_dense() const;

    friend bool operator==(const FivePointStencil& a, const FivePointStencil& b) {
        return a.center_ == b.center_ && a.north_ == b.north_ && a.south_ == b.south_ &&
               a.east_ == b.east_ && a.west_ == b.west_;
    }

private:
    ScalarField center_, north_, south_, east_, west_;
};

inline FivePointStencil assemble_nffd(const ScalarField& gamma, const ScalarField& d1,
                                      const ScalarField& d2) {
    return FivePointStencil::assemble(Scheme::nffd, gamma, d1, d2);
}

inline FivePointStencil assemble_sffd(const ScalarField& gamma, const ScalarField& d1,
                                      const ScalarField& d2) {
    return FivePointStencil::assemble(Scheme::sffd, gamma, d1, d2);
}

}  // namespace hq

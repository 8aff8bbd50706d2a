#include <doctest.h>

#include <limits>

#include "hq/metrics.hpp"

using namespace hq;

TEST_CASE("psnr closed forms") {
    const int m = 8, n = 8;
    const ScalarField ref(m, n, 0.5);
    SUBCASE("identical images give the infinite sentinel") {
        CHECK(psnr(ref, ref) == std::numeric_limits<double>::infinity());
    }
    SUBCASE("uniform difference 0.1 gives 20 dB") {
        const ScalarField u(m, n, 0.6);
        CHECK(psnr(u, ref) == doctest::Approx(20.0).epsilon(1e-12));
    }
    SUBCASE("uniform difference 0.01 gives 40 dB") {
        const ScalarField u(m, n, 0.51);
        CHECK(psnr(u, ref) == doctest::Approx(40.0).epsilon(1e-10));
    }
    SUBCASE("symmetry and monotone decrease with error") {
        const ScalarField a(m, n, 0.55), b(m, n, 0.7);
        CHECK(psnr(a, ref) == psnr(ref, a));
        CHECK(psnr(b, ref) < psnr(a, ref));
    }
    SUBCASE("measurement clamps to [0,1]") {
        const ScalarField over(m, n, 1.2), one(m, n, 1.0);
        CHECK(psnr(over, one) == std::numeric_limits<double>::infinity());
    }
    SUBCASE("shape mismatch") {
        CHECK_THROWS_AS(psnr(ScalarField(4, 4), ScalarField(4, 5)), std::invalid_argument);
    }
}

TEST_CASE("mse, l2_norm, step_norm") {
    const int m = 4, n = 4;
    const ScalarField z(m, n, 0.0);
    CHECK(mse(z, z) == 0.0);
    CHECK(l2_norm(z) == 0.0);
    CHECK(step_norm(z, z) == 0.0);

    ScalarField impulse(m, n, 0.0);
    impulse(2, 1) = 1.0;
    CHECK(l2_norm(impulse) == 1.0);

    const ScalarField half(m, n, 0.5);
    CHECK(mse(half, z) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(step_norm(half, z) == doctest::Approx(0.5 * 4.0).epsilon(1e-15));
}

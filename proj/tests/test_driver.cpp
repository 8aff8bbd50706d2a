#include <doctest.h>

#include "hq/driver.hpp"
#include "hq/imageio.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace hq;

namespace {
std::mt19937_64 rng(5150);

RunConfig base_run(Model m, Isotropy iso, double mu, double lambda) {
    RunConfig rc;
    rc.model.model = m;
    rc.model.isotropy = iso;
    rc.model.mu = mu;
    rc.model.lambda = lambda;
    return rc;
}
}  // namespace

TEST_CASE("zero outer iterations return the initial state with an empty trace") {
    RunConfig rc = base_run(Model::hl, Isotropy::aniso, 0.005, 0.001);
    rc.max_outer_iters = 0;
    const ScalarField u0 = oracle::random_field(rng, 8, 8, 0, 1);
    const auto [state, trace] = run(rc, u0);
    CHECK(state.u == u0);
    CHECK(trace.rows.empty());
    const auto& b = std::get<VectorField>(state.aux);
    for (std::size_t k = 0; k < b.x.size(); ++k) CHECK(b.x[k] == 1.0);
}

TEST_CASE("constant input is a fixed point and gr pushes b to one") {
    RunConfig rc = base_run(Model::gr, Isotropy::iso, 2.0, 0.1);
    rc.max_outer_iters = 5;
    rc.energy_rel_tol = 0.0;
    const ScalarField u0(10, 10, 0.6);
    const auto [state, trace] = run(rc, u0);
    CHECK(trace.initial_energy == doctest::Approx(0.0));
    for (std::size_t k = 0; k < state.u.size(); ++k)
        CHECK(state.u[k] == doctest::Approx(0.6).epsilon(1e-13));
    const auto& b = std::get<ScalarField>(state.aux);
    for (std::size_t k = 0; k < b.size(); ++k) CHECK(b[k] == 1.0);
}

TEST_CASE("noisy piecewise-constant image: monotone energy over 200 iterations") {
    RunConfig rc = base_run(Model::hl, Isotropy::aniso, 0.005, 0.001);
    rc.max_outer_iters = 200;
    rc.energy_rel_tol = 0.0;
    const ScalarField clean = synth::piecewise_constant();
    const ScalarField noisy = add_gaussian_noise(clean, {0.1, 99});
    const auto [state, trace] = run(rc, noisy);
    REQUIRE(trace.rows.size() == 200);
    double prev = trace.initial_energy;
    const double slack = 1e-10 * std::abs(trace.initial_energy);
    for (const TraceRow& r : trace.rows) {
        CHECK(r.energy <= prev + slack);
        prev = r.energy;
    }
    CHECK(trace.rows.back().work_units ==
          doctest::Approx(200.0 * kWorkUnitsPerCycle * rc.model.sweep.cycles));
}

TEST_CASE("bounded energy and the truncated sandwich during runs") {
    for (Model m : {Model::gr, Model::gy}) {
        RunConfig rc = base_run(m, Isotropy::aniso, 3.0, 0.01);
        rc.max_outer_iters = 40;
        rc.energy_rel_tol = 0.0;
        rc.record_iterates = true;
        const ScalarField noisy = add_gaussian_noise(synth::piecewise_constant(32, 32), {0.1, 5});
        const auto [state, trace] = run(rc, noisy);
        REQUIRE(trace.iterates.size() == trace.rows.size() + 1);
        for (std::size_t k = 0; k < trace.rows.size(); ++k) {
            const double L = trace.rows[k].energy;
            CHECK(L >= 0.0);
            CHECK(L <= trace.initial_energy + 1e-12);
            const ModelState& it = trace.iterates[k + 1];
            const double F = truncated_objective(it.u, noisy, rc.model.mu, rc.model.lambda,
                                                 rc.model.isotropy, rc.model.sweep.scheme);
            CHECK(F <= L + 1e-10 * (1.0 + std::abs(L)));
        }
    }
}

TEST_CASE("step-square sums are bounded by the telescoped energy drop") {
    RunConfig rc = base_run(Model::hl, Isotropy::aniso, 0.005, 0.001);
    rc.max_outer_iters = 60;
    rc.energy_rel_tol = 0.0;
    const ScalarField noisy = add_gaussian_noise(synth::piecewise_constant(32, 32), {0.1, 6});
    const auto [state, trace] = run(rc, noisy);
    double sum_steps = 0.0;
    for (const TraceRow& r : trace.rows)
        sum_steps += r.step_norm_u * r.step_norm_u + r.step_norm_aux * r.step_norm_aux;
    const double drop = trace.initial_energy - trace.rows.back().energy;
    const double weight = std::min(rc.model.sweep.eta, 0.5 * rc.model.mu);  // N_k = mu I / 2
    CHECK(sum_steps <= drop / weight);
}

TEST_CASE("energy increase aborts with a diagnostic") {
    // the s-step reaction term evaluated at the stale iterate is exactly the
    // configuration that breaks descent
    RunConfig rc;
    rc.model.model = Model::ms;
    rc.model.isotropy = Isotropy::iso;
    rc.model.mu = 1.0;
    rc.model.lambda = 0.1;
    rc.model.alpha = 100.0;
    rc.model.epsilon = 0.02;
    rc.model.ms_s_from_updated_u = false;
    rc.max_outer_iters = 50;
    const ScalarField noisy = add_gaussian_noise(synth::piecewise_constant(), {0.1, 7});
    CHECK_THROWS_AS(run(rc, noisy), std::runtime_error);
}

TEST_CASE("ms with the consistent s-step runs monotonically") {
    RunConfig rc;
    rc.model.model = Model::ms;
    rc.model.isotropy = Isotropy::iso;
    rc.model.mu = 1.0;
    rc.model.lambda = 0.1;
    rc.model.alpha = 1000.0;
    rc.model.epsilon = 0.02;
    rc.max_outer_iters = 80;
    rc.energy_rel_tol = 0.0;
    const ScalarField noisy = add_gaussian_noise(synth::piecewise_constant(), {0.1, 8});
    const auto [state, trace] = run(rc, noisy);
    double prev = trace.initial_energy;
    for (const TraceRow& r : trace.rows) {
        CHECK(r.energy <= prev + 1e-10 * trace.initial_energy);
        prev = r.energy;
    }
    // the edge indicator drops on the contours
    const auto& s = std::get<ScalarField>(state.aux);
    double smin = 1.0;
    for (std::size_t k = 0; k < s.size(); ++k) smin = std::min(smin, s[k]);
    CHECK(smin < 0.5);
}

TEST_CASE("fit_linear_rate closed cases") {
    SUBCASE("geometric sequence") {
        std::vector<double> d;
        for (int k = 0; k < 40; ++k) d.push_back(std::pow(2.0, -k));
        const RateFit fit = fit_linear_rate(d);
        CHECK(fit.slope == doctest::Approx(-std::log(2.0)).epsilon(1e-12));
        CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("constant sequence") {
        std::vector<double> d(30, 0.25);
        const RateFit fit = fit_linear_rate(d);
        CHECK(fit.slope == doctest::Approx(0.0));
        CHECK(fit.r_squared == doctest::Approx(1.0));
    }
    SUBCASE("insufficient data") {
        std::vector<double> d(7, 1.0);  // tail window leaves < 5 points
        CHECK_THROWS_AS(fit_linear_rate(d), std::invalid_argument);
    }
}

TEST_CASE("recorded distances support the rate fit") {
    RunConfig rc = base_run(Model::gy, Isotropy::aniso, 3.0, 0.01);
    rc.max_outer_iters = 120;
    rc.energy_rel_tol = 0.0;
    rc.record_iterates = true;
    const ScalarField noisy = add_gaussian_noise(synth::piecewise_constant(48, 48), {0.1, 9});
    const auto [state, trace] = run(rc, noisy);
    REQUIRE(trace.distance_to_final.size() == trace.iterates.size());
    CHECK(trace.distance_to_final.back() == 0.0);
    const RateFit fit = fit_linear_rate(trace.distance_to_final);
    CHECK(fit.slope < 0.0);
}

TEST_CASE("run validates inputs") {
    RunConfig rc = base_run(Model::hl, Isotropy::iso, 1.0, 0.1);
    rc.max_outer_iters = -1;
    CHECK_THROWS_AS(run(rc, ScalarField(4, 4, 0.0)), std::invalid_argument);
    rc.max_outer_iters = 1;
    ScalarField bad(4, 4, 0.0);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(run(rc, bad), std::invalid_argument);
    rc.reference = ScalarField(5, 5, 0.0);
    CHECK_THROWS_AS(run(rc, ScalarField(4, 4, 0.0)), std::invalid_argument);
}

#include <doctest.h>

#include <cmath>

#include "hopf/curvature.hpp"
#include "hopf/soliton.hpp"
#include "hopf/util.hpp"
#include "test_helpers.hpp"

using namespace hopf;
using namespace hopf_test;

TEST_CASE("profile_ode_rhs") {
    const SurfaceParams p = params_21();
    CHECK(profile_ode_rhs(p, 0.0) == 0.0);
    CHECK(profile_ode_rhs(p, 1.0) == 0.0);
    CHECK(profile_ode_rhs(p, 0.5) == doctest::Approx(3.0 / 8.0).epsilon(1e-15));
    const SurfaceParams pe = params_equal();
    CHECK(profile_ode_rhs(pe, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("implicit_x closed form at (a,b) = (-2,-1)") {
    const SurfaceParams p = params_21();
    // F(k) = -log(1-k) + (1/2) log(2-k) + (1/2) log k, F(1/2) = (1/2) log 3
    const double gauge = 0.5 * std::log(3.0);
    CHECK(implicit_x(p, 0.5, 0.0) == doctest::Approx(gauge).epsilon(1e-15));
    CHECK(implicit_x(p, 0.5, gauge) == doctest::Approx(0.0));

    // dx/dk = 1/(k(1-k)(2-k)) = 8/3 at k = 1/2
    const double h = 1e-6;
    const double fd = (implicit_x(p, 0.5 + h, gauge) - implicit_x(p, 0.5 - h, gauge)) / (2.0 * h);
    CHECK(fd == doctest::Approx(8.0 / 3.0).epsilon(1e-8));
    CHECK(fd == doctest::Approx(1.0 / profile_ode_rhs(p, 0.5)).epsilon(1e-8));

    // monotone to +-infinity at the ends of (0,1); the left end escapes at
    // rate (b/a) log k = (1/2) log k here
    CHECK(implicit_x(p, 1.0 - 1e-13, gauge) > 25.0);
    CHECK(implicit_x(p, 1e-13, gauge) < -14.0);
    CHECK(implicit_x(p, 1e-13, gauge) > implicit_x(p, 1e-14, gauge));

    CHECK_THROWS_AS(implicit_x(p, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(implicit_x(p, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(implicit_x(params_equal(), 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("implicit_x handles the b < a branch") {
    // (a,b) = (-1,-2): the third ODE root a/(a-b) = -1 is negative and the
    // log argument keeps a fixed sign on (0,1)
    const SurfaceParams p = surface_params(std::exp(-1.0), std::exp(-2.0));
    const SolitonProfile sol(p);
    CHECK(sol.k_of_x(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    const double h = 1e-6;
    const double k = 0.37;
    const double fd = (sol.x_of_k(k + h) - sol.x_of_k(k - h)) / (2.0 * h);
    CHECK(fd == doctest::Approx(1.0 / profile_ode_rhs(p, k)).epsilon(1e-7));
}

TEST_CASE("logistic_profile") {
    CHECK(logistic_profile(1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(logistic_profile(1.0, 50.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(logistic_profile(1.0, -50.0) == doctest::Approx(0.0).epsilon(1e-15));
    // k' = k(1-k) pointwise (finite differences)
    const double h = 1e-6;
    for (double x : {-2.0, 0.3, 1.7}) {
        const double fd = (logistic_profile(1.0, x + h) - logistic_profile(1.0, x - h)) / (2.0 * h);
        const double k = logistic_profile(1.0, x);
        CHECK(fd == doctest::Approx(k * (1.0 - k)).epsilon(1e-8));
    }
    CHECK_THROWS_AS(logistic_profile(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(logistic_profile(-2.0, 1.0), std::invalid_argument);
}

TEST_CASE("solve_profile: gauge and ODE-integration oracle") {
    const SurfaceParams p = params_21();
    const auto grid = linspace(-10.0, 10.0, 201);
    const SolitonProfile sol = solve_profile(p, grid);
    CHECK(sol.k_of_x(0.0) == doctest::Approx(0.5).epsilon(1e-13));

    double worst = 0.0;
    for (double x : grid)
        worst = std::max(worst, std::abs(sol.k_of_x(x) - integrate_ode(p, x)));
    CHECK(worst < 1e-8);

    // the profile satisfies the reduced soliton system
    const auto wide = linspace(-20.0, 20.0, 401);
    CHECK(soliton_residual(sol.as_metric_profile(), p.mu, wide) < 1e-8);
}

TEST_CASE("jets satisfy the ODE pointwise") {
    const SurfaceParams p = params_21();
    const SolitonProfile sol(p);
    Rng rng(31);
    for (int i = 0; i < 30; ++i) {
        const double x = rng.uniform(-12.0, 12.0);
        const Jet2 j = sol.jet(x);
        CHECK(std::abs(j.d1 - profile_ode_rhs(p, j.v)) < 1e-10);
    }
}

TEST_CASE("kappa_inverse") {
    const SurfaceParams p = params_21();
    const SolitonProfile sol(p);
    CHECK(kappa_inverse(sol, 0.5) == doctest::Approx(0.0));
    for (double x : linspace(-15.0, 15.0, 61)) {
        // through k the round trip is limited by the spacing of doubles
        // near 1: at x = 15, 1-kappa ~ 1.8e-7, so ~6e-10 of x is already
        // lost representing kappa itself
        CHECK(std::abs(kappa_inverse(sol, sol.k_of_x(x)) - x) < 1e-9);
        // the logit interface has no such floor
        CHECK(std::abs(sol.x_of_logit(sol.logit_of_x(x)) - x) < 1e-12);
    }

    Rng rng(13);
    double prev_k = 1e-6, prev_x = kappa_inverse(sol, prev_k);
    for (int i = 0; i < 20; ++i) {
        const double k = prev_k + rng.uniform(0.01, 0.04);
        if (k >= 1.0) break;
        const double x = kappa_inverse(sol, k);
        CHECK(x > prev_x); // strict monotonicity
        prev_k = k;
        prev_x = x;
    }
    CHECK_THROWS_AS(kappa_inverse(sol, 0.0), std::domain_error);
    CHECK_THROWS_AS(kappa_inverse(sol, 1.0), std::domain_error);
}

TEST_CASE("gauge translation") {
    const SurfaceParams p = params_21();
    const SolitonProfile base(p);
    const double delta = 0.83;
    const SolitonProfile shifted(p, base.gauge() + delta);
    for (double x : {-4.0, -0.7, 0.0, 2.1})
        CHECK(std::abs(shifted.k_of_x(x) - base.k_of_x(x + delta)) < 1e-10);
}

TEST_CASE("solve_profile tolerates tail saturation at wide grids") {
    // at x = 40 the true 1 - kappa is below ULP(1): kappa rounds to 1
    const SurfaceParams p = params_21();
    const auto grid = linspace(-40.0, 40.0, 801);
    const SolitonProfile sol = solve_profile(p, grid);
    CHECK(sol.k_of_x(40.0) == 1.0);
    CHECK(sol.k_of_x(-40.0) > 0.0);
    CHECK(sol.k_of_x(30.0) < 1.0);
}

TEST_CASE("equal moduli dispatches to the logistic") {
    const SurfaceParams p = params_equal();
    const auto grid = linspace(-8.0, 8.0, 101);
    const SolitonProfile sol = solve_profile(p, grid);
    CHECK(sol.logistic_case());
    for (double x : grid)
        CHECK(std::abs(sol.k_of_x(x) - logistic_profile(1.0, x)) < 1e-14);
}

TEST_CASE("check_asymptotics on the soliton") {
    const SurfaceParams p = params_21();
    const SolitonProfile sol(p);
    const AsymptoticsReport rep = check_asymptotics(sol.as_metric_profile(), p, 30.0, 1e-6);
    CHECK(rep.all_pass);
    CHECK(std::abs(rep.items[1].value) < 1e-6); // (log(k-2n+1))' + 1 at +L
    CHECK(std::abs(rep.items[5].value) < 1e-6); // (log k)' - a/b at -L
    CHECK(rep.items[2].value == 0.0);           // k - n vanishes identically
    CHECK(rep.items[3].value == 0.0);
}

TEST_CASE("check_asymptotics rejects the wrong decay rate") {
    // logistic decay has (log k)' -> 1, but a/b = 2 here: item 2b fails
    const SurfaceParams p = params_21();
    const MetricProfile g{logistic_fn(), logistic_fn(), constant_fn(0.0), constant_fn(1.0)};
    const AsymptoticsReport rep = check_asymptotics(g, p, 30.0, 1e-6);
    CHECK_FALSE(rep.items[5].pass);
    CHECK(rep.items[5].value == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK_FALSE(rep.all_pass);
}

TEST_CASE("extension_r2") {
    const SurfaceParams p = params_21();
    // direct evaluation at r1 = 1, k = 1/2:
    // (1/2)(3/2)^{-1/2}(1/2)^{-1/2} = 1/sqrt(3)
    CHECK(extension_r2(p, 1.0, 0.5) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));

    // r2 -> 0 as k -> 1^-
    CHECK(extension_r2(p, 1.0, 1.0 - 1e-10) < 1e-9);
    CHECK(extension_r2(p, 1.0, 1.0 - 1e-12) < extension_r2(p, 1.0, 1.0 - 1e-10));

    // consistency with the closed form: x(r1, r2(k)) = implicit_x(k, 0)
    for (double k : {0.2, 0.37, 0.81}) {
        const double r1 = 1.3;
        const double r2sq = extension_r2(p, r1, k);
        const double x = p.b_over_a() * std::log(r1 * r1) - std::log(r2sq);
        CHECK(x == doctest::Approx(implicit_x(p, k, 0.0)).epsilon(1e-12));
    }

    CHECK_THROWS_AS(extension_r2(p, 0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(extension_r2(p, 1.0, 1.5), std::domain_error);
    CHECK_THROWS_AS(extension_r2(params_equal(), 1.0, 0.5), std::invalid_argument);
}

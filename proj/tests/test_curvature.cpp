#include <doctest.h>

#include <cmath>

#include "hopf/curvature.hpp"
#include "hopf/metric.hpp"
#include "hopf/soliton.hpp"
#include "hopf/util.hpp"
#include "test_helpers.hpp"

using namespace hopf;
using namespace hopf_test;

TEST_CASE("constant profiles have zero curvature") {
    const MetricProfile g = MetricProfile::constants(0.7, 0.2, 0.1, 1.0);
    CHECK(bismut_ricci(g, 0.4).max_abs() == 0.0);
    CHECK(chern_ricci(g, 0.4).max_abs() == 0.0);
    const TorsionOneForms t = torsion_one_forms(g, 0.4);
    CHECK(std::abs(t.dbar_basis[0]) == 0.0);
    CHECK(std::abs(t.dbar_basis[1]) == 0.0);
    CHECK(lie_derivative_Y(g, 0.4).max_abs() == 0.0);
    CHECK(bismut_ricci_oracle(g, 0.4, 1e-2).max_abs() < 1e-14);
}

TEST_CASE("a=b logistic soliton is Bismut-Ricci flat") {
    // k = n = 1/(1+e^{-x}): k'/V = 1, so the closed form vanishes
    const MetricProfile g{logistic_fn(), logistic_fn(), constant_fn(0.0), constant_fn(1.0)};
    for (double x : {-3.0, -0.5, 0.0, 1.2, 4.0})
        CHECK(bismut_ricci(g, x).max_abs() < 1e-13);
    // while the Lie-derivative term is not zero (mu = 0 kills the product)
    CHECK(lie_derivative_Y(g, 0.0).max_abs() > 0.1);
}

TEST_CASE("a=b logistic Chern-Ricci closed form") {
    // V = k(1-k), (log V)'' = -2k(1-k); entry is -(log V)'' = 2k(1-k)
    const MetricProfile g{logistic_fn(), logistic_fn(), constant_fn(0.0), constant_fn(1.0)};
    for (double x : {-2.0, 0.0, 1.3}) {
        const double k = logistic_fn()(x).v;
        const RicciForm rc = chern_ricci(g, x);
        CHECK(rc.a11.real() == doctest::Approx(2.0 * k * (1.0 - k)).epsilon(1e-12));
        CHECK(std::abs(rc.a12) == 0.0);
        CHECK(std::abs(rc.a22) == 0.0);
    }
}

TEST_CASE("chern_ricci agrees with finite differences of log V") {
    const MetricProfile g{sine_fn(0.7, 0.12, 0.9, 0.2), sine_fn(0.05, 0.1, 1.2, 1.1),
                          sine_fn(0.0, 0.07, 0.6, 0.5), constant_fn(1.0)};
    const double x = 0.8, h = 1e-4;
    auto logV = [&](double y) { return std::log(volume_V(g, y)); };
    const double fd = (logV(x + h) - 2.0 * logV(x) + logV(x - h)) / (h * h);
    CHECK(chern_ricci(g, x).a11.real() == doctest::Approx(-fd).epsilon(1e-6));
}

TEST_CASE("torsion one-forms of the diagonal soliton") {
    const SurfaceParams p = params_21();
    const SolitonProfile sol(p);
    const MetricProfile g = sol.as_metric_profile();
    for (double x : {-1.5, 0.0, 2.0}) {
        const Jet2 k = g.k(x);
        const double V = volume_V(g, x);
        const TorsionOneForms t = torsion_one_forms(g, x);
        // n' m - m' n = 0, so both coefficients are purely imaginary
        CHECK(t.dbar_basis[0] == cxd(0.0, k.d1 / (2.0 * V)));
        CHECK(t.dbar_basis[1] == cxd(0.0, k.d1 / V));
    }
}

TEST_CASE("the two torsion forms are mutual conjugates") {
    const MetricProfile g{sine_fn(0.7, 0.12, 0.9, 0.2), sine_fn(0.05, 0.1, 1.2, 1.1),
                          sine_fn(0.0, 0.07, 0.6, 0.5), constant_fn(1.0)};
    Rng rng(5);
    for (int i = 0; i < 10; ++i) {
        const double x = rng.uniform(-4.0, 4.0);
        const TorsionOneForms t = torsion_one_forms(g, x);
        CHECK(std::abs(t.d_basis[0] - std::conj(t.dbar_basis[0])) < 1e-15);
        CHECK(std::abs(t.d_basis[1] - std::conj(t.dbar_basis[1])) < 1e-15);
    }
}

TEST_CASE("soliton satisfies rho_B = mu L_Y g") {
    const SurfaceParams p = params_21();
    const SolitonProfile sol(p);
    const MetricProfile g = sol.as_metric_profile();
    for (double x : {-2.0, 0.0, 0.9, 3.1}) {
        const Mat2c rb = bismut_ricci(g, x);
        const Mat2c ly = lie_derivative_Y(g, x) * p.mu;
        CHECK((rb - ly).max_abs() < 1e-13);
        // and equivalently lie_derivative_Y = (1/mu) rho_B
        const Mat2c back = bismut_ricci(g, x) * (1.0 / p.mu);
        CHECK((back - lie_derivative_Y(g, x)).max_abs() < 1e-13);
    }
}

TEST_CASE("bismut_ricci (2,2-bar) entry is exactly zero") {
    const MetricProfile g{sine_fn(0.7, 0.12, 0.9, 0.2), sine_fn(0.05, 0.1, 1.2, 1.1),
                          sine_fn(0.0, 0.07, 0.6, 0.5), constant_fn(1.0)};
    Rng rng(17);
    for (int i = 0; i < 10; ++i) {
        const Mat2c rb = bismut_ricci(g, rng.uniform(-4.0, 4.0));
        CHECK(rb.a22 == cxd(0.0, 0.0));
        CHECK(rb.a12 == std::conj(rb.a21));
    }
}

TEST_CASE("bismut_ricci commutes with translation") {
    const MetricProfile g{sine_fn(0.7, 0.12, 0.9, 0.2), sine_fn(0.05, 0.1, 1.2, 1.1),
                          sine_fn(0.0, 0.07, 0.6, 0.5), constant_fn(1.0)};
    const double shift = 1.37;
    const MetricProfile gs{shifted_fn(g.k, shift), shifted_fn(g.n, shift),
                           shifted_fn(g.m, shift), constant_fn(1.0)};
    for (double x : {-1.0, 0.3, 2.2})
        CHECK((bismut_ricci(gs, x) - bismut_ricci(g, x + shift)).max_abs() < 1e-15);
}

TEST_CASE("oracle Richardson ratio at the soliton") {
    const SurfaceParams p = params_21();
    const SolitonProfile sol(p);
    const MetricProfile g = sol.as_metric_profile();
    const Mat2c exact = bismut_ricci(g, 0.0);
    const double e1 = (bismut_ricci_oracle(g, 0.0, 1e-2) - exact).max_abs();
    const double e2 = (bismut_ricci_oracle(g, 0.0, 5e-3) - exact).max_abs();
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15)); // O(h^2)
}

TEST_CASE("oracle converges at second order on a generic profile") {
    const MetricProfile g{sine_fn(0.7, 0.12, 0.9, 0.2), sine_fn(0.05, 0.1, 1.2, 1.1),
                          sine_fn(0.0, 0.07, 0.6, 0.5), constant_fn(1.0)};
    const double x = 0.6;
    const Mat2c exact = bismut_ricci(g, x);
    const double e1 = (bismut_ricci_oracle(g, x, 1e-2) - exact).max_abs();
    const double e2 = (bismut_ricci_oracle(g, x, 5e-3) - exact).max_abs();
    const double order = std::log2(e1 / e2);
    CHECK(order > 1.8);
    CHECK(order < 2.2);
}

TEST_CASE("oracle rejects a stencil crossing V <= 0") {
    // V = k - n^2 = x^2 - 0.04 is negative inside |x| < 0.2
    const MetricProfile g{[](double x) { return Jet2{0.05 + x * x, 2.0 * x, 2.0}; },
                          constant_fn(0.3), constant_fn(0.0), constant_fn(1.0)};
    CHECK_THROWS_AS(bismut_ricci_oracle(g, 0.3, 0.25), std::domain_error);
}

TEST_CASE("soliton_residual") {
    const SurfaceParams p = params_21();
    const SolitonProfile sol(p);
    const MetricProfile g = sol.as_metric_profile();
    const auto grid = linspace(-20.0, 20.0, 801);
    CHECK(soliton_residual(g, p.mu, grid) < 1e-8);

    // a = b logistic: k'/V = 1 identically, mu = 0
    const MetricProfile gl{logistic_fn(), logistic_fn(), constant_fn(0.0), constant_fn(1.0)};
    CHECK(soliton_residual(gl, 0.0, grid) < 1e-12);

    // perturbation is detected
    const MetricProfile gp{sum_fn(g.k, sech_fn(0.01, 1.0)), g.n, g.m, g.p};
    CHECK(soliton_residual(gp, p.mu, grid) >= 1e-3);
}

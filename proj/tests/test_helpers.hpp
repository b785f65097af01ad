#pragma once

#include <cmath>
#include <vector>

#include "hopf/profile.hpp"
#include "hopf/soliton.hpp"
#include "hopf/surface.hpp"

namespace hopf_test {

inline hopf::SurfaceParams params_21() {
    return hopf::surface_params(std::exp(-2.0), std::exp(-1.0)); // a=-2, b=-1
}

inline hopf::SurfaceParams params_equal() {
    return hopf::surface_params(std::exp(-1.0), std::exp(-1.0)); // a=b=-1
}

/// offset + A sin(w x + phase), with analytic jets.
inline hopf::ProfileFn sine_fn(double offset, double A, double w, double phase) {
    return [=](double x) {
        const double s = std::sin(w * x + phase), c = std::cos(w * x + phase);
        return hopf::Jet2{offset + A * s, A * w * c, -A * w * w * s};
    };
}

/// A sech(w x), with analytic jets.
inline hopf::ProfileFn sech_fn(double A, double w) {
    return [=](double x) {
        const double s = 1.0 / std::cosh(w * x), t = std::tanh(w * x);
        return hopf::Jet2{A * s, -A * w * s * t, A * w * w * (s * t * t - s * (1.0 - t * t))};
    };
}

/// Pointwise sum of two profiles.
inline hopf::ProfileFn sum_fn(hopf::ProfileFn f, hopf::ProfileFn g) {
    return [f = std::move(f), g = std::move(g)](double x) {
        const hopf::Jet2 a = f(x), b = g(x);
        return hopf::Jet2{a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
    };
}

/// The logistic sigma(x) with analytic jets (k' = k(1-k)).
inline hopf::ProfileFn logistic_fn() {
    return [](double x) {
        const double k = x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
        const double d1 = k * (1.0 - k);
        return hopf::Jet2{k, d1, d1 * (1.0 - 2.0 * k)};
    };
}

/// Uniform grid of N points over [lo, hi].
inline std::vector<double> linspace(double lo, double hi, int N) {
    std::vector<double> g(static_cast<std::size_t>(N));
    const double h = (hi - lo) / (N - 1);
    for (int i = 0; i < N; ++i) g[static_cast<std::size_t>(i)] = lo + i * h;
    return g;
}

/// Independent oracle: integrates k' = k(1-k)(mu k + c_k) from (0, 1/2)
/// to x with fixed-step classical RK4 (|step| <= hmax). Lives in test
/// code only; deliberately shares nothing with the implicit closed form.
inline double integrate_ode(const hopf::SurfaceParams& p, double x, double hmax = 1e-3) {
    auto rhs = [&](double k) { return k * (1.0 - k) * (p.mu * k + p.c_k); };
    const int n = std::max(1, static_cast<int>(std::ceil(std::abs(x) / hmax)));
    const double h = x / n;
    double k = 0.5;
    for (int i = 0; i < n; ++i) {
        const double k1 = rhs(k);
        const double k2 = rhs(k + 0.5 * h * k1);
        const double k3 = rhs(k + 0.5 * h * k2);
        const double k4 = rhs(k + h * k3);
        k += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return k;
}

} // namespace hopf_test

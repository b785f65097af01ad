#pragma once

#include <functional>
#include <utility>

namespace hopf {

/// Value and first two x-derivatives of a real profile function at a point.
struct Jet2 {
    double v = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// A profile function of the invariant variable x, reported as a 2-jet.
using ProfileFn = std::function<Jet2(double)>;

/// An invariant Hermitian metric ansatz: four real profile functions
/// k, n, m, p of x, with g = [[k, n+im],[n-im, p]] in the u-chart.
/// Positivity (k > 0, p > 0, k*p - n^2 - m^2 > 0) is required wherever
/// the metric is evaluated, not at construction.
struct MetricProfile {
    ProfileFn k;
    ProfileFn n;
    ProfileFn m;
    ProfileFn p;

    /// The diagonal ansatz k = n, m = 0, p = 1.
    static MetricProfile diagonal(ProfileFn k_fn);
    /// All four entries constant.
    static MetricProfile constants(double k, double n, double m, double p);
};

/// A profile with constant value c.
ProfileFn constant_fn(double c);

/// Finite-difference fallback: builds the 2-jet of f by central differences
/// with step h. Prefer analytic jets where the derivative is known in
/// closed form; curvature formulas consume two derivatives.
ProfileFn fd_fn(std::function<double(double)> f, double h = 1e-5);

/// Shifts a profile in x: returns y -> f(y + shift).
ProfileFn shifted_fn(ProfileFn f, double shift);

/// Max mismatch between the finite-difference derivative of the value
/// channel and the stored derivative channels at x (jet consistency).
double jet_consistency_residual(const ProfileFn& f, double x, double h = 1e-4);

} // namespace hopf

#pragma once

#include <span>

#include "hopf/mat2.hpp"
#include "hopf/profile.hpp"
#include "hopf/surface.hpp"

namespace hopf {

/// Metric matrix in the u-chart: [[k, n+im],[n-im, p]] evaluated at x.
/// Throws std::domain_error if k <= 0 or k*p - n^2 - m^2 <= 0.
Mat2c metric_u(const MetricProfile& g, double x);

/// Metric matrix in the z-chart (requires p == 1), entries with the
/// 1/(z_i z_j-bar) factors of the chart change u1 = (b/a)log z1 - log z2,
/// u2 = log z2. Throws std::domain_error on an axis or for a
/// non-positive metric, std::invalid_argument if p != 1.
Mat2c metric_z(const MetricProfile& g, const SurfaceParams& p,
               std::complex<double> z1, std::complex<double> z2);

/// Metric matrix in the logarithmic w-chart (w_i = log z_i): the
/// congruence B^T g_u B with B = [[b/a, -1],[0, 1]].
Mat2c metric_w(const MetricProfile& g, const SurfaceParams& p, double x);

/// V = k p - n^2 - m^2 (= k - n^2 - m^2 under the p == 1 normalization);
/// equals det metric_u.
double volume_V(const MetricProfile& g, double x);

struct PluriclosedResult {
    bool flag = false;
    double residual = 0.0; // sup over the grid of |p'(x)|
};

/// The pluriclosed test for an invariant metric: on the compact surface
/// the condition reduces to constancy of p, so the residual is sup|p'|.
PluriclosedResult is_pluriclosed(const MetricProfile& g, std::span<const double> grid,
                                 double tol = 1e-10);

} // namespace hopf

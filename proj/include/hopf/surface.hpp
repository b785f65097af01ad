#pragma once

#include <complex>

namespace hopf {

/// Parameters of a diagonal Hopf surface: the quotient of C^2\{0} by
/// (z1, z2) -> (alpha z1, beta z2) with 0 < |alpha|, |beta| < 1.
///
/// The derived reals are
///   a   = Re log alpha < 0,
///   b   = Re log beta  < 0,
///   c_k = a/b > 0,
///   mu  = 1 - a/b,
/// so mu + c_k = 1 exactly. The pair (a, b) represents the generator
/// vector field Z = a d/dx1 + b d/dx2 of the deck action.
struct SurfaceParams {
    std::complex<double> alpha;
    std::complex<double> beta;
    double a = 0.0;
    double b = 0.0;
    double mu = 0.0;
    double c_k = 0.0;

    /// b/a, the slope used throughout the chart changes.
    double b_over_a() const { return b / a; }
    /// True when |alpha| == |beta| up to roundoff (the stationary case).
    bool equal_moduli() const;
};

/// Validates the moduli and fills in the derived constants.
/// Throws std::invalid_argument unless 0 < |alpha| < 1 and 0 < |beta| < 1.
SurfaceParams surface_params(std::complex<double> alpha, std::complex<double> beta);

/// The invariant variable x = (b/a) log|z1|^2 - log|z2|^2.
/// Throws std::domain_error on the coordinate axes.
double invariant_x(const SurfaceParams& p, std::complex<double> z1, std::complex<double> z2);

} // namespace hopf

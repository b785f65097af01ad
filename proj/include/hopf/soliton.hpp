#pragma once

#include <array>
#include <span>
#include <string>

#include "hopf/profile.hpp"
#include "hopf/surface.hpp"

namespace hopf {

/// Right-hand side of the profile ODE: k(1-k)(mu k + c_k).
double profile_ode_rhs(const SurfaceParams& p, double k);

/// The closed-form inverse of the soliton profile for a != b:
///
///   x = -log(1-k) + ((a-b)/a) log(a/(a-b) - k) + (b/a) log k - gauge,
///
/// strictly increasing on (0,1). Throws std::domain_error for k outside
/// (0,1) and std::invalid_argument in the equal-moduli case.
double implicit_x(const SurfaceParams& p, double k, double gauge);

/// 1/(1 + C e^{-x}). Throws std::invalid_argument unless C > 0.
double logistic_profile(double C, double x);

/// The monotone soliton profile kappa: R -> (0,1) solving
/// kappa' = kappa(1-kappa)(mu kappa + c_k), normalized by kappa(0) = 1/2
/// under the default gauge. For a == b this is the logistic 1/(1+e^{-x});
/// otherwise kappa(x) is evaluated by root-finding the closed form.
/// Immutable after construction; evaluation is pure and thread-safe.
class SolitonProfile {
public:
    explicit SolitonProfile(const SurfaceParams& params);
    SolitonProfile(const SurfaceParams& params, double gauge);

    const SurfaceParams& params() const { return params_; }
    double gauge() const { return gauge_; }
    bool logistic_case() const { return logistic_; }

    /// kappa(x), by safeguarded Newton on the logit variable.
    double k_of_x(double x) const;
    /// theta(x) = log(kappa/(1-kappa)), stable in the far tails.
    double logit_of_x(double x) const;
    /// Inverse: the unique x with kappa(x) = k, k in (0,1).
    double x_of_k(double k) const;
    /// Inverse from the logit variable, stable for large |theta|.
    double x_of_logit(double theta) const;
    /// (kappa, kappa', kappa'') with derivatives from the ODE.
    Jet2 jet(double x) const;

    /// The diagonal metric ansatz k = n = kappa, m = 0, p = 1.
    MetricProfile as_metric_profile() const;

private:
    SurfaceParams params_;
    double gauge_ = 0.0;
    bool logistic_ = false;
    double k0_ = 0.0; // a/(a-b), the third root of the ODE polynomial

    double implicit_of_logit(double theta) const; // x + gauge as a function of theta
};

/// Constructs the profile (gauge kappa(0) = 1/2) and evaluates it on the
/// grid as a sanity pass; dispatches to the logistic for a == b.
/// Throws std::runtime_error on a bracketing failure (a bug, not a data
/// condition: the closed form is strictly monotone).
SolitonProfile solve_profile(const SurfaceParams& p, std::span<const double> grid);

/// The unique x with kappa(x) = k; equals implicit_x at the profile gauge.
double kappa_inverse(const SolitonProfile& s, double k);

/// One item of the extension-asymptotics report.
struct AsymptoticsItem {
    std::string name;
    double value = 0.0;
    bool pass = false;
};

/// Necessary asymptotics for the metric to extend across the two elliptic
/// curves, evaluated at x = +L (items 1a-1d) and x = -L (items 2a-2d).
/// Derivative items (1b, 2b) pass when |value| < tol; ratio items when
/// |value| < tol; positivity items when value > 0.
struct AsymptoticsReport {
    std::array<AsymptoticsItem, 8> items;
    double tol = 0.0;
    bool all_pass = false;
};

AsymptoticsReport check_asymptotics(const MetricProfile& g, const SurfaceParams& p,
                                    double L, double tol = 1e-6);

/// Squared radius r2^2 at which the soliton takes value k on the circle
/// |z1| = r1:
///   r2^2 = r1^{2b/a} (1-k) (a/(a-b) - k)^{-(a-b)/a} k^{-b/a}.
/// Continuous with limit 0 as k -> 1^-.
double extension_r2(const SurfaceParams& p, double r1, double k);

} // namespace hopf

#pragma once

#include <array>
#include <span>

#include "hopf/mat2.hpp"
#include "hopf/profile.hpp"

namespace hopf {

/// Coefficient matrix of a (1,1)-form in the i du_i ^ du_j-bar basis at a
/// point x. For invariant pluriclosed input the (2,2-bar) slot of the
/// Bismut-Ricci form vanishes identically.
using RicciForm = Mat2c;

/// Closed-form Bismut-Ricci (1,1)-form of an invariant pluriclosed metric
/// (p == 1 required):
///
///   rho_B = - [ (k'/V)'          ((n'+im')/V)' ]
///           [ ((n'-im')/V)'      0             ]
///
/// with V = k - n^2 - m^2. Throws std::domain_error if V(x) <= 0.
RicciForm bismut_ricci(const MetricProfile& g, double x);

/// Chern-Ricci form rho_C = -i dd-bar log V: the only nonzero entry is
/// (1,1-bar) = -(log V)''(x).
RicciForm chern_ricci(const MetricProfile& g, double x);

/// Coefficients of the two torsion one-forms entering the Bismut-Ricci
/// assembly, in the du-bar respectively du basis:
///
///   (i/2) d-bar log V + d*w   = (i k'/2V + (n'm - m'n)/V) du1-bar + (i(n'+im')/V) du2-bar
///   -(i/2) d log V + d-bar*w  = (-i k'/2V + (n'm - m'n)/V) du1 + (-i(n'-im')/V) du2
struct TorsionOneForms {
    std::array<cxd, 2> dbar_basis; // coefficients on (du1-bar, du2-bar)
    std::array<cxd, 2> d_basis;    // coefficients on (du1, du2)
};
TorsionOneForms torsion_one_forms(const MetricProfile& g, double x);

/// Independent finite-difference oracle: assembles
/// rho_B = -d(first torsion form) - d-bar(second torsion form)
/// by central-differencing the torsion_one_forms coefficients with step h.
/// Converges to bismut_ricci at O(h^2). Throws std::domain_error if V
/// changes sign inside the stencil.
RicciForm bismut_ricci_oracle(const MetricProfile& g, double x, double h);

/// Lie-derivative term of the soliton system, normalized so that
/// rho_B = mu * lie_derivative_Y reads exactly as
/// (k'/V)' = mu k', (n'/V)' = mu n', (m'/V)' = mu m'.
Mat2c lie_derivative_Y(const MetricProfile& g, double x);

/// Sup over the grid of the max-entry residual of the soliton system
/// (k'/V)' - mu k', (n'/V)' - mu n', (m'/V)' - mu m'.
double soliton_residual(const MetricProfile& g, double mu, std::span<const double> grid);

} // namespace hopf

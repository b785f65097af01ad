#pragma once

#include <utility>
#include <vector>

#include "hopf/profile.hpp"
#include "hopf/soliton.hpp"
#include "hopf/surface.hpp"

namespace hopf {

/// Diagnostics of the most recent accepted step.
struct StepStats {
    double dt = 0.0;
    int newton_iters = 0;
    int retries = 0;
};

/// State of the reduced pluriclosed flow k_t = (k_x / (k(1-k)))_x on a
/// uniform grid over [-L, L]. Nodal values are stored in the logit
/// variable theta = log(k/(1-k)), so k = sigma(theta) stays in (0,1) by
/// construction and the Neumann data at the ends are the soliton's
/// asymptotic slopes. A FlowState is a value; step produces a new state.
struct FlowState {
    std::vector<double> grid;
    std::vector<double> theta;
    double t = 0.0;
    SurfaceParams params;
    StepStats last;

    double h() const { return grid.size() > 1 ? grid[1] - grid[0] : 0.0; }
    double L() const { return grid.empty() ? 0.0 : -grid.front(); }
    double k_at(std::size_t i) const; // sigma(theta[i])
};

/// Neumann slopes pinned at the truncated ends: theta_x(-L) = a/b,
/// theta_x(+L) = mu + c_k = 1, the extension asymptotics of the soliton.
double left_slope(const SurfaceParams& p);
double right_slope(const SurfaceParams& p);

/// Samples the initial profile's k into theta nodal values.
/// N >= 3; the grid is uniform over [-L, L].
FlowState make_flow_state(const MetricProfile& initial, const SurfaceParams& p,
                          double L, int N);

/// Discrete right-hand side k_t = (k_x/(k(1-k)))_x = theta_xx at the
/// interior nodes (the identity k_x/(k(1-k)) = theta_x is exact).
std::vector<double> flow_rhs(const FlowState& s);

/// One backward-Euler step in theta: solves
///   theta - dt * theta_xx / (sigma(theta)(1 - sigma(theta))) = theta^n
/// at interior nodes by Newton iteration on the tridiagonal system, with
/// the Neumann conditions at the ends. Halves dt and retries on Newton
/// divergence, up to a retry cap; throws std::runtime_error beyond it.
FlowState step(const FlowState& s, double dt);

/// Per-record diagnostics along a run.
struct FlowDiagnostics {
    double t = 0.0;
    double C_low = 0.0;
    double C_high = 0.0;
    double shift = 0.0;
    double aligned_sup_error = 0.0;
    double torsion_norm = 0.0;
};

struct FlowControls {
    double L = 40.0;
    int N = 2001;
    double dt0 = 1e-2;
    double dt_max = 0.5;
    double dt_growth = 1.2;  // growth factor after easy Newton solves
    double record_dt = 1.0;  // diagnostic recording interval
    double target = 0.0;     // stop early when aligned_sup_error < target (0 = off)
    double bc_tol = 1e-4;    // tolerance for the initial asymptotics report
    int newton_max = 25;
    int retry_cap = 20;
    bool fixed_dt = false;   // disable adaptivity (accuracy studies)
};

/// Evolves the initial diagonal profile (k = n, m = 0, p = 1) to time T,
/// recording diagnostics every record_dt and at the final time. Initial
/// data must pass the asymptotics report at +-L (invalid_argument
/// otherwise). If final_state is non-null it receives the end state.
std::vector<FlowDiagnostics> run_flow(const MetricProfile& initial, const SurfaceParams& p,
                                      double T, const FlowControls& c,
                                      FlowState* final_state = nullptr);

/// The soliton profile with a Gaussian bump of the given amplitude,
/// center and width added in the logit variable; decays at both ends, so
/// it keeps the extension asymptotics. The standard perturbed initial
/// data for convergence runs.
MetricProfile soliton_with_bump(const SolitonProfile& sol, double amplitude, double center,
                                double width);

/// Comparison envelope: with Phi(x) = kappa^{-1}(k(x,t)) - x - mu t,
/// returns (C_low, C_high) = (-inf Phi, sup Phi) over the nodes, the
/// signed sup-norm of the comparison function.
std::pair<double, double> comparison_envelope(const FlowState& s, const SolitonProfile& sol);

/// Best aligning translation: t0 = argmin_s sup_x |k(x,t) - kappa(x+s)|
/// by golden-section search over a bracket derived from the envelope,
/// and the attained sup error.
std::pair<double, double> shift_distance(const FlowState& s, const SolitonProfile& sol);

/// Sup-norm of the torsion potential coefficient: sup_x |k(x,t) - kappa(x)|.
double torsion_potential_norm(const FlowState& s, const SolitonProfile& sol);

} // namespace hopf

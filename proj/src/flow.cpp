#include "hopf/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hopf {

namespace {

double sigmoid(double t) {
    return t >= 0.0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t));
}

double logit(double k) { return std::log(k / (1.0 - k)); }

// w = sigma(t)(1 - sigma(t)) and (1 - 2 sigma(t)) with one exp evaluation.
inline void logistic_weights(double t, double& w, double& one_minus_2s) {
    const double e = std::exp(t >= 0.0 ? -t : t); // exp(-|t|)
    const double inv = 1.0 / (1.0 + e);
    w = e * inv * inv;
    one_minus_2s = (t >= 0.0 ? -(1.0 - e) : (1.0 - e)) * inv;
}

// Thomas solve specialized to the Newton system: interior off-diagonals
// are the constant -r, the first row is (1, -1 | rhs0), the last row is
// (-1, 1 | rhsN). diag and rhs are overwritten; the solution lands in rhs.
void thomas_solve_const_offdiag(std::vector<double>& diag, std::vector<double>& rhs, double r) {
    const std::size_t n = diag.size();
    double m = -r / diag[0]; // row 1 against row 0 (upper entry -1)
    diag[1] += m;
    rhs[1] -= m * rhs[0];
    for (std::size_t i = 2; i + 1 < n; ++i) {
        m = -r / diag[i - 1];
        diag[i] += r * m;
        rhs[i] -= m * rhs[i - 1];
    }
    m = -1.0 / diag[n - 2]; // last row (lower entry -1)
    diag[n - 1] += r * m;
    rhs[n - 1] -= m * rhs[n - 2];

    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 1;) rhs[i] = (rhs[i] + r * rhs[i + 1]) / diag[i];
    rhs[0] = (rhs[0] + rhs[1]) / diag[0];
}

// Backward-Euler Newton solver with persistent workspace. Works on the
// w-scaled residual
//   G_i = w_i (theta_i - theta^n_i) - (dt/h^2)(theta_{i+1} - 2 theta_i + theta_{i-1}),
// w = sigma(theta)(1-sigma(theta)), which stays well-conditioned where the
// diffusivity 1/w blows up in the tails. End rows impose the Neumann data.
class Stepper {
public:
    Stepper(std::size_t N, double h, double gl, double gr)
        : N_(N), h_(h), gl_(gl), gr_(gr), diag_(N), rhs_(N), theta_n_(N), w_(N), ms_(N) {}

    // Advances theta in place by dt; false on Newton failure (theta is
    // restored to the input state in that case). The logistic weights of
    // the converged theta are cached across calls: the confirmation pass
    // of one step provides the first-iteration weights of the next, so a
    // typical step costs a single exp sweep.
    bool advance(std::vector<double>& theta, double dt, int newton_max, int* iters_out) {
        theta_n_ = theta;
        const double r = dt / (h_ * h_);
        const double tol = 1e-12 * std::max(1.0, r);

        // quadratic extrapolation from the two previous states; at small
        // dt the predictor already satisfies the residual tolerance and
        // the step costs a single build sweep
        if (nhist_ == 2) {
            const double t2 = 0.0, t1 = -dt1_, t0 = -(dt1_ + dt2_), te = dt;
            const double c2 = (te - t1) * (te - t0) / ((t2 - t1) * (t2 - t0));
            const double c1 = (te - t2) * (te - t0) / ((t1 - t2) * (t1 - t0));
            const double c0 = (te - t2) * (te - t1) / ((t0 - t2) * (t0 - t1));
            for (std::size_t i = 0; i < N_; ++i)
                theta[i] = c2 * theta_n_[i] + c1 * prev1_[i] + c0 * prev2_[i];
            weights_valid_ = false;
        }

        bool ok = false;
        int done_iters = 0;
        for (int it = 0; it < newton_max; ++it) {
            if (!weights_valid_) {
                for (std::size_t i = 1; i + 1 < N_; ++i)
                    logistic_weights(theta[i], w_[i], ms_[i]);
                weights_valid_ = true;
            }

            rhs_[0] = -(theta[0] - theta[1] + h_ * gl_);
            diag_[0] = 1.0;
            rhs_[N_ - 1] = -(theta[N_ - 1] - theta[N_ - 2] - h_ * gr_);
            diag_[N_ - 1] = 1.0;
            double res_norm = std::max(std::abs(rhs_[0]), std::abs(rhs_[N_ - 1]));

            for (std::size_t i = 1; i + 1 < N_; ++i) {
                const double w = w_[i];
                const double lap = theta[i + 1] - 2.0 * theta[i] + theta[i - 1];
                const double G = w * (theta[i] - theta_n_[i]) - r * lap;
                rhs_[i] = -G;
                res_norm = std::max(res_norm, std::abs(G));
                // dG/dtheta_i picks up the derivative of w through sigma
                diag_[i] = w + w * ms_[i] * (theta[i] - theta_n_[i]) + 2.0 * r;
            }

            if (res_norm < tol) {
                ok = true; // weights still match theta
                done_iters = it;
                break;
            }
            if (!std::isfinite(res_norm)) break;

            thomas_solve_const_offdiag(diag_, rhs_, r);
            double dmax = 0.0;
            bool finite = true;
            for (std::size_t i = 0; i < N_; ++i) {
                if (!std::isfinite(rhs_[i])) {
                    finite = false;
                    break;
                }
                theta[i] += rhs_[i];
                dmax = std::max(dmax, std::abs(rhs_[i]));
            }
            weights_valid_ = false;
            if (!finite || dmax > 50.0) break; // diverging update
            if (dmax < 1e-13 * (1.0 + std::abs(theta[N_ / 2]))) {
                ok = true;
                done_iters = it + 1;
                break;
            }
        }

        if (!ok) {
            theta = theta_n_;
            weights_valid_ = false;
            return false;
        }
        prev2_.swap(prev1_);
        prev1_ = theta_n_;
        dt2_ = dt1_;
        dt1_ = dt;
        if (nhist_ < 2) ++nhist_;
        if (iters_out) *iters_out = done_iters;
        return true;
    }

private:
    std::size_t N_;
    double h_, gl_, gr_;
    std::vector<double> diag_, rhs_, theta_n_, w_, ms_;
    std::vector<double> prev1_, prev2_;
    double dt1_ = 0.0, dt2_ = 0.0;
    int nhist_ = 0;
    bool weights_valid_ = false;
};

} // namespace

double FlowState::k_at(std::size_t i) const { return sigmoid(theta[i]); }

double left_slope(const SurfaceParams& p) { return p.a / p.b; }
double right_slope(const SurfaceParams& p) { return p.mu + p.c_k; }

FlowState make_flow_state(const MetricProfile& initial, const SurfaceParams& p,
                          double L, int N) {
    if (N < 3) throw std::invalid_argument("make_flow_state: N must be at least 3");
    if (!(L > 0.0)) throw std::invalid_argument("make_flow_state: L must be positive");
    FlowState s;
    s.params = p;
    s.grid.resize(static_cast<std::size_t>(N));
    s.theta.resize(static_cast<std::size_t>(N));
    const double h = 2.0 * L / (N - 1);

    // Nodes where k has saturated to 0 or 1 in double precision (the far
    // tails, |x| >~ 36) carry no logit information; they are extended
    // linearly at the pinned asymptotic slopes, which the admissibility
    // precondition makes exact to double precision there.
    std::ptrdiff_t first = -1, last = -1;
    for (int i = 0; i < N; ++i) {
        const double x = -L + i * h;
        s.grid[static_cast<std::size_t>(i)] = x;
        const double k = initial.k(x).v;
        // the reduced flow is derived for the diagonal ansatz only
        if (std::abs(initial.n(x).v - k) > 1e-12 * (1.0 + std::abs(k)) ||
            std::abs(initial.m(x).v) > 1e-12 || std::abs(initial.p(x).v - 1.0) > 1e-12)
            throw std::invalid_argument("make_flow_state: initial data must have k = n, m = 0, p = 1");
        if (k > 0.0 && k < 1.0) {
            s.theta[static_cast<std::size_t>(i)] = logit(k);
            if (first < 0) first = i;
            last = i;
        } else if (k == 0.0 || k == 1.0) {
            s.theta[static_cast<std::size_t>(i)] =
                std::numeric_limits<double>::quiet_NaN(); // filled below
        } else {
            throw std::invalid_argument("make_flow_state: initial k must lie in [0,1]");
        }
    }
    if (first < 0) throw std::invalid_argument("make_flow_state: initial k saturates everywhere");
    for (std::ptrdiff_t i = first; i <= last; ++i)
        if (std::isnan(s.theta[static_cast<std::size_t>(i)]))
            throw std::invalid_argument("make_flow_state: interior k saturates to 0 or 1");
    for (std::ptrdiff_t i = first - 1; i >= 0; --i)
        s.theta[static_cast<std::size_t>(i)] =
            s.theta[static_cast<std::size_t>(i + 1)] - h * left_slope(p);
    for (std::ptrdiff_t i = last + 1; i < N; ++i)
        s.theta[static_cast<std::size_t>(i)] =
            s.theta[static_cast<std::size_t>(i - 1)] + h * right_slope(p);
    return s;
}

std::vector<double> flow_rhs(const FlowState& s) {
    const std::size_t N = s.theta.size();
    const double h = s.h();
    std::vector<double> out(N > 2 ? N - 2 : 0);
    for (std::size_t i = 1; i + 1 < N; ++i)
        out[i - 1] = (s.theta[i + 1] - 2.0 * s.theta[i] + s.theta[i - 1]) / (h * h);
    return out;
}

// Advances state in place, halving dt on Newton divergence.
static void step_in_place(FlowState& s, Stepper& stepper, double dt, int newton_max,
                          int retry_cap) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    double dt_try = dt;
    for (int retry = 0; retry <= retry_cap; ++retry) {
        int iters = 0;
        if (stepper.advance(s.theta, dt_try, newton_max, &iters)) {
            s.t += dt_try;
            s.last = {dt_try, iters, retry};
            for (double th : s.theta)
                if (!std::isfinite(th)) throw std::runtime_error("step: non-finite state");
            return;
        }
        dt_try *= 0.5;
    }
    throw std::runtime_error("step: Newton divergence persisted through retries");
}

FlowState step(const FlowState& s, double dt) {
    FlowState next = s;
    Stepper stepper(s.theta.size(), s.h(), left_slope(s.params), right_slope(s.params));
    step_in_place(next, stepper, dt, 25, 20);
    return next;
}

MetricProfile soliton_with_bump(const SolitonProfile& sol, double amplitude, double center,
                                double width) {
    if (!(width > 0.0)) throw std::invalid_argument("soliton_with_bump: width must be positive");
    return MetricProfile::diagonal([sol, amplitude, center, width](double x) {
        const Jet2 kj = sol.jet(x);
        const double k = kj.v;
        const double w = k * (1.0 - k);
        const double th = sol.logit_of_x(x);
        const double thp = kj.d1 / w;
        const double thpp = (kj.d2 * w - kj.d1 * kj.d1 * (1.0 - 2.0 * k)) / (w * w);

        const double u = (x - center) / width;
        const double b = amplitude * std::exp(-0.5 * u * u);
        const double db = -u / width * b;
        const double d2b = (u * u - 1.0) / (width * width) * b;

        const double nth = th + b, nthp = thp + db, nthpp = thpp + d2b;
        const double nk = sigmoid(nth);
        const double nw = nk * (1.0 - nk);
        return Jet2{nk, nw * nthp, nw * (1.0 - 2.0 * nk) * nthp * nthp + nw * nthpp};
    });
}

std::pair<double, double> comparison_envelope(const FlowState& s, const SolitonProfile& sol) {
    double phi_max = -1e300, phi_min = 1e300;
    const double mu_t = sol.params().mu * s.t;
    for (std::size_t i = 0; i < s.theta.size(); ++i) {
        const double phi = sol.x_of_logit(s.theta[i]) - s.grid[i] - mu_t;
        phi_max = std::max(phi_max, phi);
        phi_min = std::min(phi_min, phi);
    }
    return {-phi_min, phi_max}; // (C_low, C_high)
}

namespace {

double aligned_error(const FlowState& s, const SolitonProfile& sol, double shift) {
    double worst = 0.0;
    for (std::size_t i = 0; i < s.theta.size(); ++i) {
        const double k = sigmoid(s.theta[i]);
        worst = std::max(worst, std::abs(k - sol.k_of_x(s.grid[i] + shift)));
    }
    return worst;
}

} // namespace

std::pair<double, double> shift_distance(const FlowState& s, const SolitonProfile& sol) {
    const auto [c_low, c_high] = comparison_envelope(s, sol);
    const double mu_t = sol.params().mu * s.t;
    // the comparison bound traps the profile between translates, so the
    // optimal shift lies inside the envelope around mu t
    double lo = mu_t - c_low - 1.0;
    double hi = mu_t + c_high + 1.0;

    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = aligned_error(s, sol, x1);
    double f2 = aligned_error(s, sol, x2);
    for (int it = 0; it < 70 && (hi - lo) > 1e-11; ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = aligned_error(s, sol, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = aligned_error(s, sol, x2);
        }
    }
    const double t0 = 0.5 * (lo + hi);
    return {t0, aligned_error(s, sol, t0)};
}

double torsion_potential_norm(const FlowState& s, const SolitonProfile& sol) {
    double worst = 0.0;
    for (std::size_t i = 0; i < s.theta.size(); ++i)
        worst = std::max(worst, std::abs(sigmoid(s.theta[i]) - sol.k_of_x(s.grid[i])));
    return worst;
}

std::vector<FlowDiagnostics> run_flow(const MetricProfile& initial, const SurfaceParams& p,
                                      double T, const FlowControls& c,
                                      FlowState* final_state) {
    // beyond |x| ~ 30 the k -> 1 tail drops below double resolution and
    // 1-k evaluates to 0, so the report is taken at min(L, 30)
    const AsymptoticsReport rep = check_asymptotics(initial, p, std::min(c.L, 30.0), c.bc_tol);
    if (!rep.all_pass)
        throw std::invalid_argument("run_flow: initial data fails the asymptotics report");

    const SolitonProfile sol(p);
    FlowState state = make_flow_state(initial, p, c.L, c.N);

    std::vector<FlowDiagnostics> traj;
    auto record = [&](const FlowState& s) {
        const auto [c_low, c_high] = comparison_envelope(s, sol);
        const auto [shift, err] = shift_distance(s, sol);
        traj.push_back({s.t, c_low, c_high, shift, err, torsion_potential_norm(s, sol)});
        return err;
    };

    double err = record(state);
    if (c.target > 0.0 && err < c.target) {
        if (final_state) *final_state = state;
        return traj;
    }

    Stepper stepper(state.theta.size(), state.h(), left_slope(p), right_slope(p));
    double dt = c.dt0;
    double next_record = c.record_dt;
    const double eps_t = 1e-12;
    while (state.t < T - eps_t) {
        const double dt_eff = std::min(dt, T - state.t);
        step_in_place(state, stepper, dt_eff, c.newton_max, c.retry_cap);
        if (!c.fixed_dt) {
            if (state.last.retries == 0 && state.last.newton_iters <= 4)
                dt = std::min(dt * c.dt_growth, c.dt_max);
            else if (state.last.retries > 0)
                dt = std::max(state.last.dt, 1e-10);
        }
        if (state.t >= next_record - eps_t || state.t >= T - eps_t) {
            err = record(state);
            while (next_record <= state.t + eps_t) next_record += c.record_dt;
            if (c.target > 0.0 && err < c.target) break;
        }
    }

    if (final_state) *final_state = state;
    return traj;
}

} // namespace hopf

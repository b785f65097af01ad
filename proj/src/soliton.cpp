#include "hopf/soliton.hpp"

#include <cmath>
#include <stdexcept>

namespace hopf {

namespace {

double logit(double k) { return std::log(k / (1.0 - k)); }
double sigmoid(double t) { return t >= 0.0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t)); }
// log(1 + e^t), overflow-safe
double softplus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

void require_open_unit(double k, const char* who) {
    if (!(k > 0.0 && k < 1.0))
        throw std::domain_error(std::string(who) + ": k must lie in (0,1)");
}

} // namespace

double profile_ode_rhs(const SurfaceParams& p, double k) {
    return k * (1.0 - k) * (p.mu * k + p.c_k);
}

// d/dk of the ODE right-hand side, used for the kappa'' jet.
static double profile_ode_rhs_dk(const SurfaceParams& p, double k) {
    return (1.0 - 2.0 * k) * (p.mu * k + p.c_k) + k * (1.0 - k) * p.mu;
}

double implicit_x(const SurfaceParams& p, double k, double gauge) {
    require_open_unit(k, "implicit_x");
    if (p.equal_moduli())
        throw std::invalid_argument("implicit_x: a == b (use the logistic profile)");
    const double k0 = p.a / (p.a - p.b);
    // k0 lies outside [0,1] for every admissible (a,b), so k0 - k keeps a
    // fixed sign on (0,1); the antiderivative uses log|k0 - k|.
    const double arg = k0 - k;
    if (arg == 0.0) throw std::domain_error("implicit_x: vanishing log argument");
    return -std::log(1.0 - k) + ((p.a - p.b) / p.a) * std::log(std::abs(arg)) +
           (p.b / p.a) * std::log(k) - gauge;
}

double logistic_profile(double C, double x) {
    if (!(C > 0.0)) throw std::invalid_argument("logistic_profile: C must be positive");
    // 1/(1 + C e^{-x}), overflow-safe at both ends
    const double t = x - std::log(C);
    return sigmoid(t);
}

SolitonProfile::SolitonProfile(const SurfaceParams& params) : SolitonProfile(params, 0.0) {
    // default gauge: kappa(0) = 1/2
    if (!logistic_)
        gauge_ = implicit_x(params_, 0.5, 0.0);
    // logistic case: F(theta) = theta, F(logit(1/2)) = 0 already
}

SolitonProfile::SolitonProfile(const SurfaceParams& params, double gauge)
    : params_(params), gauge_(gauge), logistic_(params.equal_moduli()) {
    if (!logistic_) k0_ = params_.a / (params_.a - params_.b);
}

double SolitonProfile::implicit_of_logit(double theta) const {
    // x + gauge as a function of theta = logit(k); stable in the tails:
    //   -log(1-k) = softplus(theta),  log k = -softplus(-theta).
    if (logistic_) return theta;
    const double k = sigmoid(theta);
    return softplus(theta) + ((params_.a - params_.b) / params_.a) * std::log(std::abs(k0_ - k)) -
           (params_.b / params_.a) * softplus(-theta);
}

double SolitonProfile::x_of_logit(double theta) const {
    return implicit_of_logit(theta) - gauge_;
}

double SolitonProfile::x_of_k(double k) const {
    require_open_unit(k, "SolitonProfile::x_of_k");
    return x_of_logit(logit(k));
}

double SolitonProfile::logit_of_x(double x) const {
    if (logistic_) return x + gauge_;
    const double y = x + gauge_;
    // dF/dtheta = 1/(mu k + c_k) is pinched between two positive
    // constants, so Newton with a bisection safeguard is bulletproof.
    const double slope_min = std::min(params_.c_k, params_.mu + params_.c_k);

    double theta = y * slope_min; // any finite start works
    double lo = theta, hi = theta;
    double flo = implicit_of_logit(lo) - y;
    if (flo == 0.0) return lo;
    // expand a bracket in the downhill direction
    double width = std::max(1.0, std::abs(y) * 0.5);
    if (flo > 0.0) {
        for (int it = 0; it < 200; ++it) {
            lo -= width;
            width *= 2.0;
            flo = implicit_of_logit(lo) - y;
            if (flo <= 0.0) break;
            hi = lo;
        }
        if (flo > 0.0) throw std::runtime_error("SolitonProfile: bracketing failure");
    } else {
        double fhi = flo;
        for (int it = 0; it < 200; ++it) {
            hi += width;
            width *= 2.0;
            fhi = implicit_of_logit(hi) - y;
            if (fhi >= 0.0) break;
            lo = hi;
        }
        if (fhi < 0.0) throw std::runtime_error("SolitonProfile: bracketing failure");
    }

    theta = 0.5 * (lo + hi);
    const double f_floor = 4.0e-16 * (1.0 + std::abs(y)); // fp floor of F evaluation
    for (int it = 0; it < 200; ++it) {
        const double f = implicit_of_logit(theta) - y;
        if (std::abs(f) <= f_floor) break;
        if (f > 0.0) hi = theta; else lo = theta;
        // Newton step with the exact derivative 1/(mu k + c_k)
        const double k = sigmoid(theta);
        double next = theta - f * (params_.mu * k + params_.c_k);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double dtheta = std::abs(next - theta);
        theta = next;
        if (dtheta < 4e-16 * (1.0 + std::abs(theta))) break;
    }
    return theta;
}

double SolitonProfile::k_of_x(double x) const {
    return sigmoid(logit_of_x(x));
}

Jet2 SolitonProfile::jet(double x) const {
    const double k = k_of_x(x);
    const double d1 = profile_ode_rhs(params_, k);
    const double d2 = profile_ode_rhs_dk(params_, k) * d1;
    return {k, d1, d2};
}

MetricProfile SolitonProfile::as_metric_profile() const {
    // copy of this profile's data captured by value; evaluation stays pure
    SolitonProfile self = *this;
    return MetricProfile::diagonal([self](double x) { return self.jet(x); });
}

SolitonProfile solve_profile(const SurfaceParams& p, std::span<const double> grid) {
    SolitonProfile s(p);
    double prev = -1.0;
    bool first = true;
    double prev_x = 0.0;
    for (double x : grid) {
        const double k = s.k_of_x(x);
        // k = 0 or 1 exactly is the correctly rounded value in the far
        // tails (1 - kappa drops below ULP(1) near x ~ 37); only values
        // outside [0,1] or non-monotone evaluations signal a bug
        if (!(k >= 0.0 && k <= 1.0))
            throw std::runtime_error("solve_profile: profile left [0,1]");
        if (!first && x > prev_x && !(k >= prev))
            throw std::runtime_error("solve_profile: monotonicity violated (bug)");
        prev = k;
        prev_x = x;
        first = false;
    }
    return s;
}

double kappa_inverse(const SolitonProfile& s, double k) {
    require_open_unit(k, "kappa_inverse");
    return s.x_of_k(k);
}

AsymptoticsReport check_asymptotics(const MetricProfile& g, const SurfaceParams& p,
                                    double L, double tol) {
    if (!(L > 0.0)) throw std::invalid_argument("check_asymptotics: L must be positive");
    AsymptoticsReport rep;
    rep.tol = tol;

    const Jet2 kp = g.k(L), np = g.n(L), mp = g.m(L);
    const Jet2 km = g.k(-L), nm = g.n(-L), mm = g.m(-L);
    const double aob = p.a / p.b;

    // x -> +infinity: the (2,2-bar) entry k - 2n + 1 decays like e^{-x}
    const double q = kp.v - 2.0 * np.v + 1.0;
    const double dq = kp.d1 - 2.0 * np.d1;
    rep.items[0] = {"1a: (k-2n+1) e^x > 0", q * std::exp(L), q > 0.0};
    rep.items[1] = {"1b: (log(k-2n+1))' + 1", dq / q + 1.0, false};
    rep.items[2] = {"1c: (k-n) e^{x/2}", (kp.v - np.v) * std::exp(L / 2.0), false};
    rep.items[3] = {"1d: m e^{x/2}", mp.v * std::exp(L / 2.0), false};

    // x -> -infinity: k decays like e^{(a/b)x}
    rep.items[4] = {"2a: k e^{-(a/b)x} > 0", km.v * std::exp(aob * L), km.v > 0.0};
    rep.items[5] = {"2b: (log k)' - a/b", km.d1 / km.v - aob, false};
    rep.items[6] = {"2c: (k-n) e^{-(a/2b)x}", (km.v - nm.v) * std::exp(aob * L / 2.0), false};
    rep.items[7] = {"2d: m e^{-(a/2b)x}", mm.v * std::exp(aob * L / 2.0), false};

    for (std::size_t i : {1u, 2u, 3u, 5u, 6u, 7u})
        rep.items[i].pass = std::abs(rep.items[i].value) < tol;
    rep.items[0].pass = rep.items[0].pass && std::isfinite(rep.items[0].value);
    rep.items[4].pass = rep.items[4].pass && std::isfinite(rep.items[4].value);

    rep.all_pass = true;
    for (const auto& it : rep.items) rep.all_pass = rep.all_pass && it.pass;
    return rep;
}

double extension_r2(const SurfaceParams& p, double r1, double k) {
    if (!(r1 > 0.0)) throw std::domain_error("extension_r2: r1 must be positive");
    require_open_unit(k, "extension_r2");
    if (p.equal_moduli()) throw std::invalid_argument("extension_r2: requires a != b");
    const double k0 = p.a / (p.a - p.b);
    return std::pow(r1, 2.0 * p.b / p.a) * (1.0 - k) *
           std::pow(std::abs(k0 - k), -(p.a - p.b) / p.a) * std::pow(k, -p.b / p.a);
}

} // namespace hopf

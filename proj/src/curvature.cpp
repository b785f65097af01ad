#include "hopf/curvature.hpp"

#include <cmath>
#include <stdexcept>

namespace hopf {

namespace {

struct ProfileData {
    Jet2 k, n, m;
    double V, dV; // V = k - n^2 - m^2 and V'
};

ProfileData load(const MetricProfile& g, double x, const char* who) {
    const Jet2 p = g.p(x);
    if (std::abs(p.v - 1.0) > 1e-12 || std::abs(p.d1) > 1e-12 || std::abs(p.d2) > 1e-12)
        throw std::invalid_argument(std::string(who) + ": requires p == 1");
    ProfileData d{g.k(x), g.n(x), g.m(x), 0.0, 0.0};
    // fused multiply-adds keep V relatively accurate where k -> 1 and
    // k - n^2 cancels to the eps level (the far tail of the soliton)
    d.V = std::fma(-d.m.v, d.m.v, std::fma(-d.n.v, d.n.v, d.k.v));
    d.dV = std::fma(-2.0 * d.m.v, d.m.d1, std::fma(-2.0 * d.n.v, d.n.d1, d.k.d1));
    if (d.V <= 0.0) throw std::domain_error(std::string(who) + ": degenerate metric (V <= 0)");
    return d;
}

// (f'/V)' = (f'' V - f' V') / V^2
double flux_derivative(const Jet2& f, double V, double dV) {
    return (f.d2 * V - f.d1 * dV) / (V * V);
}

} // namespace

RicciForm bismut_ricci(const MetricProfile& g, double x) {
    const ProfileData d = load(g, x, "bismut_ricci");
    const double e11 = flux_derivative(d.k, d.V, d.dV);
    const double en = flux_derivative(d.n, d.V, d.dV);
    const double em = flux_derivative(d.m, d.V, d.dV);
    return {cxd(-e11, 0.0), cxd(-en, -em), cxd(-en, em), cxd(0.0, 0.0)};
}

RicciForm chern_ricci(const MetricProfile& g, double x) {
    const ProfileData d = load(g, x, "chern_ricci");
    const double d2V = d.k.d2 - 2.0 * (d.n.d1 * d.n.d1 + d.n.v * d.n.d2) -
                       2.0 * (d.m.d1 * d.m.d1 + d.m.v * d.m.d2);
    const double log_V_dd = d2V / d.V - (d.dV / d.V) * (d.dV / d.V);
    return {cxd(-log_V_dd, 0.0), cxd(0.0, 0.0), cxd(0.0, 0.0), cxd(0.0, 0.0)};
}

TorsionOneForms torsion_one_forms(const MetricProfile& g, double x) {
    const ProfileData d = load(g, x, "torsion_one_forms");
    const cxd i(0.0, 1.0);
    const double cross = (d.n.d1 * d.m.v - d.m.d1 * d.n.v) / d.V;
    const cxd w_prime(d.n.d1, d.m.d1); // n' + i m'
    TorsionOneForms t;
    t.dbar_basis = {i * d.k.d1 / (2.0 * d.V) + cross, i * w_prime / d.V};
    t.d_basis = {-i * d.k.d1 / (2.0 * d.V) + cross, -i * std::conj(w_prime) / d.V};
    return t;
}

RicciForm bismut_ricci_oracle(const MetricProfile& g, double x, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("bismut_ricci_oracle: h must be positive");
    // V must keep its sign across the stencil.
    auto V_at = [&](double y) {
        const Jet2 k = g.k(y), n = g.n(y), m = g.m(y);
        return std::fma(-m.v, m.v, std::fma(-n.v, n.v, k.v));
    };
    if (V_at(x) <= 0.0) throw std::domain_error("bismut_ricci_oracle: degenerate metric");
    if (V_at(x + h) <= 0.0 || V_at(x - h) <= 0.0)
        throw std::domain_error("bismut_ricci_oracle: step too large, V changes sign in stencil");

    const TorsionOneForms tp = torsion_one_forms(g, x + h);
    const TorsionOneForms tm = torsion_one_forms(g, x - h);
    const cxd i(0.0, 1.0);
    const double inv2h = 1.0 / (2.0 * h);
    // With the first form A du1-bar + B du2-bar and the second C du1 + D du2,
    // rho_B = -d(first) - d-bar(second) has entries
    //   R11 = i (A' - C'),  R12 = i B',  R21 = -i D',  R22 = 0
    // in the i du_i ^ du_j-bar basis.
    const cxd dA = (tp.dbar_basis[0] - tm.dbar_basis[0]) * inv2h;
    const cxd dB = (tp.dbar_basis[1] - tm.dbar_basis[1]) * inv2h;
    const cxd dC = (tp.d_basis[0] - tm.d_basis[0]) * inv2h;
    const cxd dD = (tp.d_basis[1] - tm.d_basis[1]) * inv2h;
    return {i * (dA - dC), i * dB, -i * dD, cxd(0.0, 0.0)};
}

Mat2c lie_derivative_Y(const MetricProfile& g, double x) {
    const Jet2 p = g.p(x);
    if (std::abs(p.v - 1.0) > 1e-12 || std::abs(p.d1) > 1e-12)
        throw std::invalid_argument("lie_derivative_Y: requires p == 1");
    // Normalized so that rho_B = mu * (this matrix) is verbatim the system
    // (k'/V)' = mu k', (n'/V)' = mu n', (m'/V)' = mu m'; the sign of
    // eq. rho_B = -[...] is absorbed here.
    const Jet2 k = g.k(x), n = g.n(x), m = g.m(x);
    return {cxd(-k.d1, 0.0), cxd(-n.d1, -m.d1), cxd(-n.d1, m.d1), cxd(0.0, 0.0)};
}

double soliton_residual(const MetricProfile& g, double mu, std::span<const double> grid) {
    double worst = 0.0;
    for (double x : grid) {
        const ProfileData d = load(g, x, "soliton_residual");
        const double rk = flux_derivative(d.k, d.V, d.dV) - mu * d.k.d1;
        const double rn = flux_derivative(d.n, d.V, d.dV) - mu * d.n.d1;
        const double rm = flux_derivative(d.m, d.V, d.dV) - mu * d.m.d1;
        worst = std::max({worst, std::abs(rk), std::abs(rn), std::abs(rm)});
    }
    return worst;
}

} // namespace hopf

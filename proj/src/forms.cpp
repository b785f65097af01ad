#include "hopf/forms.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "hopf/metric.hpp"

namespace hopf::forms {

namespace {

constexpr cxd I_UNIT{0.0, 1.0};

int degree_of(unsigned mask) { return std::popcount(mask); }

// Sign of e_S ^ e_T for disjoint increasing tuples: parity of the number
// of pairs (s, t), s in S, t in T, s > t.
int wedge_sign(unsigned S, unsigned T) {
    int inv = 0;
    for (int t = 0; t < 4; ++t)
        if (T >> t & 1u) inv += std::popcount(S >> (t + 1));
    return (inv & 1) ? -1 : 1;
}

// Sign of e_g ^ e_S (g not in S): parity of #bits of S below g.
int prepend_sign(int g, unsigned S) {
    const int below = std::popcount(S & ((1u << g) - 1u));
    return (below & 1) ? -1 : 1;
}

// Conjugation swaps dw1 <-> dw1-bar and dw2 <-> dw2-bar (bit g -> g^1);
// returns the canonical mask and the reordering sign.
std::pair<unsigned, int> conj_monomial(unsigned S) {
    int seq[4];
    int n = 0;
    for (int g = 0; g < 4; ++g)
        if (S >> g & 1u) seq[n++] = g ^ 1;
    int inv = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (seq[i] > seq[j]) ++inv;
    unsigned M = 0;
    for (int i = 0; i < n; ++i) M |= 1u << seq[i];
    return {M, (inv & 1) ? -1 : 1};
}

bool jet_nonzero(const CJet& c) {
    return std::abs(c.c[0]) != 0.0 || std::abs(c.c[1]) != 0.0 || std::abs(c.c[2]) != 0.0;
}

} // namespace

CJet operator+(const CJet& f, const CJet& g) {
    CJet r;
    r.order = std::min(f.order, g.order);
    for (int i = 0; i < 3; ++i) r.c[i] = f.c[i] + g.c[i];
    return r;
}

CJet operator-(const CJet& f, const CJet& g) {
    CJet r;
    r.order = std::min(f.order, g.order);
    for (int i = 0; i < 3; ++i) r.c[i] = f.c[i] - g.c[i];
    return r;
}

CJet operator*(const CJet& f, const CJet& g) {
    CJet r;
    r.order = std::min(f.order, g.order);
    r.c[0] = f.c[0] * g.c[0];
    r.c[1] = f.c[1] * g.c[0] + f.c[0] * g.c[1];
    r.c[2] = f.c[2] * g.c[0] + 2.0 * f.c[1] * g.c[1] + f.c[0] * g.c[2];
    return r;
}

CJet operator*(cxd s, const CJet& f) {
    CJet r = f;
    for (int i = 0; i < 3; ++i) r.c[i] = s * f.c[i];
    return r;
}

CJet conj(const CJet& f) {
    CJet r = f;
    for (int i = 0; i < 3; ++i) r.c[i] = std::conj(f.c[i]);
    return r;
}

CJet differentiate(const CJet& f) {
    if (f.order < 1) throw std::invalid_argument("CJet: derivative order exhausted");
    CJet r;
    r.c = {f.c[1], f.c[2], cxd{}};
    r.order = f.order - 1;
    return r;
}

InvariantForm::InvariantForm(double b_over_a) : boa_(b_over_a) {}

InvariantForm InvariantForm::monomial(double b_over_a, unsigned mask, const CJet& c) {
    InvariantForm f(b_over_a);
    f.coef_[mask & 15u] = c;
    return f;
}

int InvariantForm::degree() const {
    int d = 0;
    for (unsigned s = 0; s < 16; ++s)
        if (jet_nonzero(coef_[s])) d = std::max(d, degree_of(s));
    return d;
}

bool InvariantForm::is_zero(double tol) const {
    for (unsigned s = 0; s < 16; ++s)
        if (std::abs(coef_[s].c[0]) > tol) return false;
    return true;
}

double InvariantForm::max_abs() const {
    double m = 0.0;
    for (unsigned s = 0; s < 16; ++s) m = std::max(m, std::abs(coef_[s].c[0]));
    return m;
}

InvariantForm InvariantForm::operator+(const InvariantForm& o) const {
    InvariantForm r(boa_);
    for (unsigned s = 0; s < 16; ++s) r.coef_[s] = coef_[s] + o.coef_[s];
    return r;
}

InvariantForm InvariantForm::operator-(const InvariantForm& o) const {
    InvariantForm r(boa_);
    for (unsigned s = 0; s < 16; ++s) r.coef_[s] = coef_[s] - o.coef_[s];
    return r;
}

InvariantForm InvariantForm::operator*(cxd s) const {
    InvariantForm r(boa_);
    for (unsigned m = 0; m < 16; ++m) r.coef_[m] = s * coef_[m];
    return r;
}

InvariantForm InvariantForm::conjugated() const {
    InvariantForm r(boa_);
    for (unsigned s = 0; s < 16; ++s) {
        if (!jet_nonzero(coef_[s])) continue;
        const auto [mask, sign] = conj_monomial(s);
        r.coef_[mask] = cxd(sign, 0.0) * conj(coef_[s]);
    }
    return r;
}

InvariantForm wedge(const InvariantForm& f, const InvariantForm& g) {
    int df = -1, dg = -1;
    for (unsigned s = 0; s < 16; ++s) {
        if (jet_nonzero(f.coef(s))) df = std::max(df, degree_of(s));
        if (jet_nonzero(g.coef(s))) dg = std::max(dg, degree_of(s));
    }
    if (df >= 0 && dg >= 0 && df + dg > 4)
        throw std::invalid_argument("wedge: degree overflow");

    InvariantForm r(f.b_over_a());
    for (unsigned s = 0; s < 16; ++s) {
        if (!jet_nonzero(f.coef(s))) continue;
        for (unsigned t = 0; t < 16; ++t) {
            if (s & t) continue; // repeated generator
            if (!jet_nonzero(g.coef(t))) continue;
            const int sign = wedge_sign(s, t);
            r.set_coef(s | t, r.coef(s | t) + cxd(sign, 0.0) * (f.coef(s) * g.coef(t)));
        }
    }
    return r;
}

InvariantForm exterior_d(const InvariantForm& f) {
    // d(c e_S) = c' dx ^ e_S, dx = (b/a)(e0 + e1) - (e2 + e3)
    const double boa = f.b_over_a();
    const double w[4] = {boa, boa, -1.0, -1.0};
    InvariantForm r(boa);
    for (unsigned s = 0; s < 16; ++s) {
        if (!jet_nonzero(f.coef(s))) continue;
        const CJet dc = differentiate(f.coef(s));
        for (int g = 0; g < 4; ++g) {
            if (s >> g & 1u) continue;
            const unsigned m = s | (1u << g);
            const double weight = w[g] * prepend_sign(g, s);
            r.set_coef(m, r.coef(m) + cxd(weight, 0.0) * dc);
        }
    }
    return r;
}

namespace {

// Unbarred generators of each structure: I holds dw1, dw2; J holds
// dw1, dw2-bar.
unsigned holomorphic_mask(Structure s) {
    return s == Structure::I ? 0b0101u : 0b1001u;
}

} // namespace

InvariantForm pq_project(const InvariantForm& f, int p, int q, Structure st) {
    const unsigned hol = holomorphic_mask(st);
    InvariantForm r(f.b_over_a());
    for (unsigned s = 0; s < 16; ++s) {
        const int ph = std::popcount(s & hol);
        const int qh = std::popcount(s & ~hol & 15u);
        if (ph == p && qh == q) r.set_coef(s, f.coef(s));
    }
    return r;
}

InvariantForm d_c(const InvariantForm& f, Structure st) {
    // d^c = i(d-bar - d); with x-only coefficients this is
    // i c' (xi^{0,1} - xi^{1,0}) ^ e_S, where xi splits dx by structure.
    const double boa = f.b_over_a();
    double w[4];
    if (st == Structure::I) {
        // xi01 - xi10 = -(b/a) e0 + (b/a) e1 + e2 - e3
        w[0] = -boa; w[1] = boa; w[2] = 1.0; w[3] = -1.0;
    } else {
        // J: xi10 = (b/a) e0 - e3, xi01 = (b/a) e1 - e2
        w[0] = -boa; w[1] = boa; w[2] = -1.0; w[3] = 1.0;
    }
    InvariantForm r(boa);
    for (unsigned s = 0; s < 16; ++s) {
        if (!jet_nonzero(f.coef(s))) continue;
        const CJet dc = differentiate(f.coef(s));
        for (int g = 0; g < 4; ++g) {
            if (s >> g & 1u) continue;
            const unsigned m = s | (1u << g);
            const double weight = w[g] * prepend_sign(g, s);
            r.set_coef(m, r.coef(m) + (I_UNIT * cxd(weight, 0.0)) * dc);
        }
    }
    return r;
}

namespace {

CJet real_profile_jet(const Jet2& j) { return CJet::real_jet(j.v, j.d1, j.d2); }

// The ansatz-violating negative control deforms both factors: phi2 gets
// (1-k) -> (1-k^2), which breaks the isotropy and projection identities,
// and phi1's dw2-bar coefficient picks up x-dependence, which breaks
// involutivity. (A deformation of phi2 alone cannot: the Frobenius
// 4-form carries the factor 1 + (b/a)r, and r = -a/b kills it for any
// coefficient functions in phi2.)
std::pair<InvariantForm, InvariantForm> make_phis(const Jet2& k, double boa, double aob,
                                                  bool perturbed) {
    InvariantForm phi1 = InvariantForm::monomial(boa, 1u << 0, CJet::value(1.0));
    CJet phi1_bar2 = CJet::value(-aob);
    if (perturbed)
        phi1_bar2 = CJet::real_jet(-aob * (1.0 + 0.2 * k.v), -aob * 0.2 * k.d1,
                                   -aob * 0.2 * k.d2);
    phi1.set_coef(1u << 3, phi1_bar2);

    CJet one_minus_k = CJet::real_jet(1.0 - k.v, -k.d1, -k.d2);
    if (perturbed)
        one_minus_k = CJet::real_jet(1.0 - k.v * k.v, -2.0 * k.v * k.d1,
                                     -2.0 * (k.d1 * k.d1 + k.v * k.d2));
    InvariantForm phi2 = InvariantForm::monomial(boa, 1u << 1, cxd(boa, 0.0) * real_profile_jet(k));
    phi2.set_coef(1u << 2, one_minus_k);
    return {phi1, phi2};
}

} // namespace

OmegaPlus omega_plus(const MetricProfile& g, const SurfaceParams& p, double x) {
    const Jet2 k = g.k(x);
    if (!(k.v > 0.0 && k.v < 1.0))
        throw std::domain_error("omega_plus: k must lie in (0,1)");
    auto [phi1, phi2] = make_phis(k, p.b_over_a(), p.a / p.b, false);
    return {wedge(phi1, phi2), phi1, phi2};
}

InvariantForm omega_w(const MetricProfile& g, const SurfaceParams& p, double x) {
    // omega = i sum H_ij dw_i ^ dw_j-bar with H = metric_w; assembled from
    // jets so one exterior derivative is still available downstream.
    const Jet2 k = g.k(x), n = g.n(x), m = g.m(x), pp = g.p(x);
    const double boa = p.b_over_a();

    const CJet h11 = CJet::real_jet(boa * boa * k.v, boa * boa * k.d1, boa * boa * k.d2);
    const CJet h12 = {{cxd(boa * (-k.v + n.v), boa * m.v),
                       cxd(boa * (-k.d1 + n.d1), boa * m.d1),
                       cxd(boa * (-k.d2 + n.d2), boa * m.d2)},
                      2};
    const CJet h22 = CJet::real_jet(k.v - 2.0 * n.v + pp.v, k.d1 - 2.0 * n.d1 + pp.d1,
                                    k.d2 - 2.0 * n.d2 + pp.d2);

    InvariantForm w(boa);
    // dw1^dw1-bar = e0^e1, dw1^dw2-bar = e0^e3, dw2^dw1-bar = -e1^e2,
    // dw2^dw2-bar = e2^e3
    w.set_coef(0b0011u, I_UNIT * h11);
    w.set_coef(0b1001u, I_UNIT * h12);
    w.set_coef(0b0110u, cxd(-1.0, 0.0) * (I_UNIT * conj(h12)));
    w.set_coef(0b1100u, I_UNIT * h22);
    return w;
}

double frobenius_residual(const MetricProfile& g, const SurfaceParams& p, double x,
                          bool perturbed) {
    const Jet2 k = g.k(x);
    auto [phi1, phi2] = make_phis(k, p.b_over_a(), p.a / p.b, perturbed);
    const InvariantForm omega = wedge(phi1, phi2);
    const double r1 = wedge(exterior_d(phi1), omega).max_abs();
    const double r2 = wedge(exterior_d(phi2), omega).max_abs();
    return std::max(r1, r2);
}

double isotropy_residual(const MetricProfile& g, const SurfaceParams& p, double x) {
    const Mat2c H = metric_w(g, p, x);
    const cxd det = H.det();
    if (std::abs(det) == 0.0) throw std::domain_error("isotropy_residual: degenerate metric");
    // inverse of the 2x2 pairing matrix
    const cxd inv11 = H.a22 / det, inv12 = -H.a12 / det;
    const cxd inv21 = -H.a21 / det, inv22 = H.a11 / det;
    auto minv = [&](int i, int j) {
        return i == 0 ? (j == 0 ? inv11 : inv12) : (j == 0 ? inv21 : inv22);
    };

    const double k = g.k(x).v;
    const double boa = p.b_over_a();
    // holomorphic / antiholomorphic coefficient vectors of phi1, phi2
    const cxd alpha[2][2] = {{1.0, 0.0}, {0.0, 1.0 - k}};
    const cxd beta[2][2] = {{0.0, -p.a / p.b}, {boa * k, 0.0}};

    double worst = 0.0;
    for (int f = 0; f < 2; ++f)
        for (int s = 0; s < 2; ++s) {
            cxd pair{};
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    pair += alpha[f][i] * beta[s][j] * minv(j, i) +
                            beta[f][i] * alpha[s][j] * minv(i, j);
            worst = std::max(worst, std::abs(pair));
        }
    return worst;
}

double real_part_residual(const MetricProfile& g, const SurfaceParams& p, double x) {
    const OmegaPlus op = omega_plus(g, p, x);
    const InvariantForm re_plus = (op.Omega + op.Omega.conjugated()) * cxd(0.5, 0.0);
    InvariantForm omega_minus = InvariantForm::monomial(p.b_over_a(), 0b0101u, CJet::value(1.0));
    const InvariantForm re_minus = (omega_minus + omega_minus.conjugated()) * cxd(0.5, 0.0);
    return (re_plus - re_minus).max_abs();
}

ProjectionReport projection_identity_residual(const MetricProfile& g, const SurfaceParams& p,
                                              double x) {
    const OmegaPlus op = omega_plus(g, p, x);
    const InvariantForm im_plus =
        (op.Omega - op.Omega.conjugated()) * (cxd(0.0, -0.5)); // (F - conj F)/(2i)
    const InvariantForm proj = pq_project(im_plus, 1, 1, Structure::I) * cxd(-1.0, 0.0);

    // displayed target: i((b/a) k dw1^dw1-bar + (a/b)(1-k) dw2^dw2-bar)
    const double k = g.k(x).v;
    const double boa = p.b_over_a();
    InvariantForm target(boa);
    target.set_coef(0b0011u, CJet::value(I_UNIT * boa * k));
    target.set_coef(0b1100u, CJet::value(I_UNIT * (1.0 - k) / boa));

    ProjectionReport rep;
    rep.residual = (proj - target).max_abs();

    // best single lambda with proj = lambda * omega_w over the (1,1) slots
    const InvariantForm w = omega_w(g, p, x);
    cxd num{}, den{};
    for (unsigned mask : {0b0011u, 0b0110u, 0b1001u, 0b1100u}) {
        num += std::conj(w.coef(mask).c[0]) * proj.coef(mask).c[0];
        den += std::conj(w.coef(mask).c[0]) * w.coef(mask).c[0];
    }
    const cxd lambda = num / den;
    rep.lambda = lambda.real();
    double fit = 0.0;
    for (unsigned mask : {0b0011u, 0b0110u, 0b1001u, 0b1100u})
        fit = std::max(fit, std::abs(proj.coef(mask).c[0] - lambda * w.coef(mask).c[0]));
    rep.fit_residual = fit;
    return rep;
}

double odd_type_residual(const MetricProfile& g, const SurfaceParams& p, double x) {
    const Jet2 k = g.k(x), n = g.n(x), m = g.m(x), pp = g.p(x);
    const double scale = 1.0 + std::abs(k.v);
    if (std::abs(n.v - k.v) > 1e-12 * scale || std::abs(n.d1 - k.d1) > 1e-12 * scale ||
        std::abs(m.v) > 1e-12 || std::abs(m.d1) > 1e-12)
        throw std::invalid_argument("odd_type_residual: requires the diagonal ansatz k = n, m = 0");
    if (std::abs(pp.d1) > 1e-12)
        throw std::invalid_argument("odd_type_residual: requires constant p");

    const InvariantForm w_I = omega_w(g, p, x);
    InvariantForm w_J = w_I;
    // J reverses the z2-plane: flip the sign of the dw2 ^ dw2-bar block
    w_J.set_coef(0b1100u, cxd(-1.0, 0.0) * w_I.coef(0b1100u));

    const InvariantForm H_I = d_c(w_I, Structure::I);
    const InvariantForm H_J = d_c(w_J, Structure::J);
    return (H_I + H_J).max_abs();
}

double phi_solve(std::complex<double> z1, std::complex<double> z2, const SurfaceParams& p) {
    const double r1sq = std::norm(z1);
    const double r2sq = std::norm(z2);
    if (r1sq == 0.0 && r2sq == 0.0)
        throw std::domain_error("phi_solve: the origin is excluded");

    const double e1 = -2.0 * p.a / (p.a + p.b); // both exponents negative
    const double e2 = -2.0 * p.b / (p.a + p.b);
    auto f = [&](double phi) {
        return r1sq * std::pow(phi, e1) + r2sq * std::pow(phi, e2) - 1.0;
    };
    auto df = [&](double phi) {
        return e1 * r1sq * std::pow(phi, e1 - 1.0) + e2 * r2sq * std::pow(phi, e2 - 1.0);
    };

    // single-term inversions bracket the root from below
    double lo = 0.0;
    if (r1sq > 0.0) lo = std::max(lo, std::pow(r1sq, -1.0 / e1));
    if (r2sq > 0.0) lo = std::max(lo, std::pow(r2sq, -1.0 / e2));
    double hi = lo;
    double fhi = f(hi);
    for (int it = 0; it < 200 && fhi > 0.0; ++it) {
        hi *= 2.0;
        fhi = f(hi);
    }

    // bisection in log phi, then Newton polish
    double llo = std::log(lo), lhi = std::log(hi);
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (llo + lhi);
        if (f(std::exp(mid)) > 0.0) llo = mid; else lhi = mid;
    }
    double phi = std::exp(0.5 * (llo + lhi));
    for (int it = 0; it < 8; ++it) {
        const double fv = f(phi);
        const double d = df(phi);
        if (d == 0.0) break;
        const double next = phi - fv / d;
        if (!(next > 0.0)) break;
        if (std::abs(next - phi) < 1e-16 * phi) { phi = next; break; }
        phi = next;
    }
    return phi;
}

namespace {

// Central-difference d^2/dz_i dz_j-bar of log Phi at a single step.
Mat2c ddbar_log_phi_step(std::complex<double> z1, std::complex<double> z2,
                         const SurfaceParams& p, double h) {
    // real coordinates (x1, y1, x2, y2)
    auto eval = [&](double dx1, double dy1, double dx2, double dy2) {
        return std::log(phi_solve(z1 + cxd(dx1, dy1), z2 + cxd(dx2, dy2), p));
    };
    const double f0 = eval(0, 0, 0, 0);
    const double inv_h2 = 1.0 / (h * h);
    const double inv_4h2 = 1.0 / (4.0 * h * h);

    auto second = [&](int var) {
        double d[4] = {0, 0, 0, 0};
        d[var] = h;
        return (eval(d[0], d[1], d[2], d[3]) - 2.0 * f0 + eval(-d[0], -d[1], -d[2], -d[3])) *
               inv_h2;
    };
    auto mixed = [&](int va, int vb) {
        double dp[4] = {0, 0, 0, 0}, dm[4] = {0, 0, 0, 0};
        dp[va] = h;
        dp[vb] = h;
        dm[va] = h;
        dm[vb] = -h;
        const double fpp = eval(dp[0], dp[1], dp[2], dp[3]);
        const double fpm = eval(dm[0], dm[1], dm[2], dm[3]);
        const double fmp = eval(-dm[0], -dm[1], -dm[2], -dm[3]);
        const double fmm = eval(-dp[0], -dp[1], -dp[2], -dp[3]);
        return (fpp - fpm - fmp + fmm) * inv_4h2;
    };

    const double L11 = 0.25 * (second(0) + second(1));
    const double L22 = 0.25 * (second(2) + second(3));
    const double re12 = 0.25 * (mixed(0, 2) + mixed(1, 3));
    const double im12 = 0.25 * (mixed(0, 3) - mixed(1, 2));
    const cxd off(re12, im12);
    return {cxd(L11, 0.0), off, std::conj(off), cxd(L22, 0.0)};
}

} // namespace

Mat2c ddbar_log_phi(std::complex<double> z1, std::complex<double> z2,
                    const SurfaceParams& p, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("ddbar_log_phi: h must be positive");
    if (std::norm(z1) + std::norm(z2) <= 16.0 * h * h)
        throw std::domain_error("ddbar_log_phi: stencil crosses the origin");
    // Richardson level: (4 D(h/2) - D(h))/3 cancels the h^2 term, keeping
    // the semipositivity checks well clear of the step error.
    const Mat2c Dh = ddbar_log_phi_step(z1, z2, p, h);
    const Mat2c Dh2 = ddbar_log_phi_step(z1, z2, p, 0.5 * h);
    return (Dh2 * 4.0 - Dh) * (1.0 / 3.0);
}

} // namespace hopf::forms

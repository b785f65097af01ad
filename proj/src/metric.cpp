#include "hopf/metric.hpp"

#include <cmath>
#include <stdexcept>

namespace hopf {

namespace {

void require_unit_p(const Jet2& p) {
    if (std::abs(p.v - 1.0) > 1e-12 || std::abs(p.d1) > 1e-12)
        throw std::invalid_argument("metric: the chart formulas assume p == 1");
}

} // namespace

Mat2c metric_u(const MetricProfile& g, double x) {
    const Jet2 k = g.k(x), n = g.n(x), m = g.m(x), p = g.p(x);
    const double V = std::fma(-m.v, m.v, std::fma(-n.v, n.v, k.v * p.v));
    if (k.v <= 0.0 || V <= 0.0)
        throw std::domain_error("metric_u: non-positive metric (k or V <= 0)");
    return {cxd(k.v, 0.0), cxd(n.v, m.v), cxd(n.v, -m.v), cxd(p.v, 0.0)};
}

Mat2c metric_z(const MetricProfile& g, const SurfaceParams& p,
               std::complex<double> z1, std::complex<double> z2) {
    const double x = invariant_x(p, z1, z2); // throws on an axis
    require_unit_p(g.p(x));
    const Mat2c gu = metric_u(g, x); // positivity check
    const double boa = p.b_over_a();
    const double k = gu.a11.real();
    const cxd nm = gu.a12; // n + i m

    const double r1sq = std::norm(z1);
    const double r2sq = std::norm(z2);
    const cxd off = boa * (-k + nm) / (z1 * std::conj(z2));
    return {cxd(boa * boa * k / r1sq, 0.0), off, std::conj(off),
            cxd((k - 2.0 * nm.real() + 1.0) / r2sq, 0.0)};
}

Mat2c metric_w(const MetricProfile& g, const SurfaceParams& p, double x) {
    const Mat2c gu = metric_u(g, x);
    const double boa = p.b_over_a();
    // Congruence B^T g_u B with B = [[b/a, -1],[0, 1]] (du_i = B_ij dw_j).
    const double k = gu.a11.real();
    const cxd nm = gu.a12;
    const double pp = gu.a22.real();
    const cxd off = boa * (-k + nm);
    return {cxd(boa * boa * k, 0.0), off, std::conj(off),
            cxd(k - 2.0 * nm.real() + pp, 0.0)};
}

double volume_V(const MetricProfile& g, double x) {
    const Jet2 k = g.k(x), n = g.n(x), m = g.m(x), p = g.p(x);
    return std::fma(-m.v, m.v, std::fma(-n.v, n.v, k.v * p.v));
}

PluriclosedResult is_pluriclosed(const MetricProfile& g, std::span<const double> grid,
                                 double tol) {
    double residual = 0.0;
    for (double x : grid) residual = std::max(residual, std::abs(g.p(x).d1));
    return {residual <= tol, residual};
}

} // namespace hopf

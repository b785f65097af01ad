#include "hopf/profile.hpp"

#include <cmath>

namespace hopf {

MetricProfile MetricProfile::diagonal(ProfileFn k_fn) {
    MetricProfile g;
    g.k = k_fn;
    g.n = std::move(k_fn);
    g.m = constant_fn(0.0);
    g.p = constant_fn(1.0);
    return g;
}

MetricProfile MetricProfile::constants(double k, double n, double m, double p) {
    return {constant_fn(k), constant_fn(n), constant_fn(m), constant_fn(p)};
}

ProfileFn constant_fn(double c) {
    return [c](double) { return Jet2{c, 0.0, 0.0}; };
}

ProfileFn fd_fn(std::function<double(double)> f, double h) {
    return [f = std::move(f), h](double x) {
        const double fp = f(x + h), fm = f(x - h), f0 = f(x);
        return Jet2{f0, (fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h)};
    };
}

ProfileFn shifted_fn(ProfileFn f, double shift) {
    return [f = std::move(f), shift](double x) { return f(x + shift); };
}

double jet_consistency_residual(const ProfileFn& f, double x, double h) {
    const Jet2 jp = f(x + h), jm = f(x - h), j0 = f(x);
    const double r1 = std::abs((jp.v - jm.v) / (2.0 * h) - j0.d1);
    const double r2 = std::abs((jp.d1 - jm.d1) / (2.0 * h) - j0.d2);
    return std::max(r1, r2);
}

} // namespace hopf

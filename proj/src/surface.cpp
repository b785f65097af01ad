#include "hopf/surface.hpp"

#include <cmath>
#include <stdexcept>

namespace hopf {

bool SurfaceParams::equal_moduli() const {
    return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

SurfaceParams surface_params(std::complex<double> alpha, std::complex<double> beta) {
    const double ra = std::abs(alpha);
    const double rb = std::abs(beta);
    if (!(ra > 0.0 && ra < 1.0) || !(rb > 0.0 && rb < 1.0))
        throw std::invalid_argument("surface_params: |alpha| and |beta| must lie in (0,1)");

    SurfaceParams p;
    p.alpha = alpha;
    p.beta = beta;
    p.a = std::log(ra); // Re log alpha
    p.b = std::log(rb);
    p.c_k = p.a / p.b;
    p.mu = 1.0 - p.a / p.b;
    return p;
}

double invariant_x(const SurfaceParams& p, std::complex<double> z1, std::complex<double> z2) {
    const double r1 = std::abs(z1);
    const double r2 = std::abs(z2);
    if (r1 == 0.0 || r2 == 0.0)
        throw std::domain_error("invariant_x: the chart excludes the coordinate axes");
    return p.b_over_a() * 2.0 * std::log(r1) - 2.0 * std::log(r2);
}

} // namespace hopf

#pragma once

#include <array>
#include <complex>

#include "hopf/mat2.hpp"
#include "hopf/profile.hpp"
#include "hopf/surface.hpp"

namespace hopf::forms {

using cxd = std::complex<double>;

/// Complex 2-jet in the invariant variable x with a tracked derivative
/// order: c[0] = value, c[1] = d/dx, c[2] = d^2/dx^2. Operations keep
/// the minimum valid order; exterior_d consumes one derivative.
struct CJet {
    std::array<cxd, 3> c{};
    int order = 2;

    static CJet value(cxd v) { return {{v, 0.0, 0.0}, 2}; }
    static CJet real_jet(double v, double d1, double d2) { return {{v, d1, d2}, 2}; }
};

CJet operator+(const CJet& f, const CJet& g);
CJet operator-(const CJet& f, const CJet& g);
CJet operator*(const CJet& f, const CJet& g); // product rule
CJet operator*(cxd s, const CJet& f);
CJet conj(const CJet& f);
CJet differentiate(const CJet& f); // shifts channels, order - 1

/// Invariant complex form on the logarithmic w-chart. Coefficients are
/// CJets over the 16 wedge-ordered basis monomials of
/// {dw1, dw1-bar, dw2, dw2-bar} (mask bits 0..3 in that order), stored
/// for strictly increasing index tuples only. The chart datum is
/// dx = (b/a)(dw1 + dw1-bar) - (dw2 + dw2-bar).
class InvariantForm {
public:
    explicit InvariantForm(double b_over_a);

    double b_over_a() const { return boa_; }

    const CJet& coef(unsigned mask) const { return coef_[mask]; }
    void set_coef(unsigned mask, const CJet& c) { coef_[mask] = c; }

    /// A single basis monomial with the given coefficient.
    static InvariantForm monomial(double b_over_a, unsigned mask, const CJet& c);

    /// Degree of the highest nonzero monomial (0 for the zero form).
    int degree() const;
    bool is_zero(double tol = 0.0) const;

    /// Max modulus of the coefficient values.
    double max_abs() const;

    InvariantForm operator+(const InvariantForm& o) const;
    InvariantForm operator-(const InvariantForm& o) const;
    InvariantForm operator*(cxd s) const;

    /// Complex conjugate: conjugates coefficients and exchanges barred
    /// with unbarred generators (so (p,q) <-> (q,p)).
    InvariantForm conjugated() const;

private:
    double boa_;
    std::array<CJet, 16> coef_{};
};

/// Graded exterior product, coefficients multiplied with the product
/// rule. Throws std::invalid_argument on degree overflow.
InvariantForm wedge(const InvariantForm& f, const InvariantForm& g);

/// Exterior derivative: d(c e_S) = c' dx ^ e_S with dx expanded in the
/// basis. Degree +1, consumes one derivative order.
InvariantForm exterior_d(const InvariantForm& f);

/// Complex structures entering the generalized Kahler checks: I is the
/// standard one ((1,0)-forms dw1, dw2), J reverses the orientation of
/// the z2-plane ((1,0)-forms dw1, dw2-bar).
enum class Structure { I, J };

/// Keeps exactly the monomials with p unbarred and q barred factors in
/// the given structure's bigrading.
InvariantForm pq_project(const InvariantForm& f, int p, int q,
                         Structure s = Structure::I);

/// d^c = i(d-bar - d) in the given structure. Since coefficients depend
/// only on x, this is i c' (xi^{0,1} - xi^{1,0}) ^ e_S with xi the
/// structure splitting of dx.
InvariantForm d_c(const InvariantForm& f, Structure s);

/// The defining (2,0)-form of the second complex structure and its
/// factors:
///   phi1 = dw1 - (a/b) dw2-bar,
///   phi2 = (b/a) k dw1-bar + (1-k) dw2,
///   Omega_plus = phi1 ^ phi2.
struct OmegaPlus {
    InvariantForm Omega;
    InvariantForm phi1;
    InvariantForm phi2;
};
OmegaPlus omega_plus(const MetricProfile& g, const SurfaceParams& p, double x);

/// Fundamental (1,1)-form of the profile metric in the w-chart,
/// omega = i sum H_ij dw_i ^ dw_j-bar with H = metric_w.
InvariantForm omega_w(const MetricProfile& g, const SurfaceParams& p, double x);

/// Frobenius involutivity residual: max_i of the single 4-form
/// coefficient modulus of d phi_i ^ phi1 ^ phi2. When perturbed is set,
/// (1-k) in phi2 is replaced by (1-k^2) — a negative control that
/// violates the ansatz.
double frobenius_residual(const MetricProfile& g, const SurfaceParams& p, double x,
                          bool perturbed = false);

/// Isotropy residual: max_{i,j} |g(phi_i, phi_j)| with the covectors
/// paired through the inverse of metric_w extended complex-bilinearly.
double isotropy_residual(const MetricProfile& g, const SurfaceParams& p, double x);

/// Real-part identity residual: max coefficient modulus of
/// Re Omega_plus - Re Omega_minus, Omega_minus = dw1 ^ dw2.
double real_part_residual(const MetricProfile& g, const SurfaceParams& p, double x);

/// Projection identity: -pi^{1,1}_I Im Omega_plus against the displayed
/// diagonal (1,1)-form i((b/a) k dw1^dw1-bar + (a/b)(1-k) dw2^dw2-bar),
/// plus the best single constant lambda with
/// -pi^{1,1} Im Omega_plus = lambda omega_w and the residual of the fit.
struct ProjectionReport {
    double residual = 0.0;     // coefficient distance to the displayed form
    double lambda = 0.0;       // fitted constant multiple of omega_w
    double fit_residual = 0.0; // residual of the lambda fit
};
ProjectionReport projection_identity_residual(const MetricProfile& g,
                                              const SurfaceParams& p, double x);

/// Odd-type generalized Kahler residual: with omega_J obtained from
/// omega_I by flipping the sign of the dw2 ^ dw2-bar block, returns the
/// max coefficient modulus of d^c_I omega_I + d^c_J omega_J. Requires
/// the diagonal ansatz k = n, m = 0 and constant p (invalid_argument
/// otherwise).
double odd_type_residual(const MetricProfile& g, const SurfaceParams& p, double x);

/// The positive root Phi of |z1|^2 Phi^{-2a/(a+b)} + |z2|^2 Phi^{-2b/(a+b)} = 1,
/// well defined away from the origin (both exponents are negative).
/// Residual of the identity at the returned root is < 1e-12.
double phi_solve(std::complex<double> z1, std::complex<double> z2, const SurfaceParams& p);

/// Finite-difference i d d-bar log Phi in the z-chart: the Hermitian
/// coefficient matrix L_ij = (d^2/dz_i dz_j-bar) log Phi, semipositive
/// where Phi is defined. Throws std::domain_error if the stencil
/// approaches the origin.
Mat2c ddbar_log_phi(std::complex<double> z1, std::complex<double> z2,
                    const SurfaceParams& p, double h);

} // namespace hopf::forms

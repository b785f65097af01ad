#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

namespace hopf {

using cxd = std::complex<double>;

/// 2x2 complex matrix, used for Hermitian metric/curvature coefficients
/// in a fixed i dz_i ^ dz_j-bar basis.
struct Mat2c {
    cxd a11{}, a12{}, a21{}, a22{};

    cxd at(int i, int j) const {
        return i == 0 ? (j == 0 ? a11 : a12) : (j == 0 ? a21 : a22);
    }

    Mat2c operator-(const Mat2c& o) const {
        return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
    }
    Mat2c operator+(const Mat2c& o) const {
        return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22};
    }
    Mat2c operator*(double s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }

    cxd det() const { return a11 * a22 - a12 * a21; }

    double max_abs() const {
        return std::max(std::max(std::abs(a11), std::abs(a12)),
                        std::max(std::abs(a21), std::abs(a22)));
    }

    bool is_hermitian(double tol = 0.0) const {
        return std::abs(a12 - std::conj(a21)) <= tol &&
               std::abs(a11.imag()) <= tol && std::abs(a22.imag()) <= tol;
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    std::pair<double, double> hermitian_eigenvalues() const {
        const double tr = a11.real() + a22.real();
        const double dd = a11.real() - a22.real();
        const double disc = std::sqrt(dd * dd + 4.0 * std::norm(a12));
        return {0.5 * (tr - disc), 0.5 * (tr + disc)};
    }
};

inline Mat2c operator*(double s, const Mat2c& m) { return m * s; }

} // namespace hopf

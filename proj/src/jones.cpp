#include "twistphase/jones.hpp"

#include <algorithm>
#include <cmath>

namespace twistphase {

namespace {

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }
bool finite(const PolarizationVector& v) { return finite(v.e1) && finite(v.e2); }
bool finite(const Mat2& m) {
    return finite(m.m11) && finite(m.m12) && finite(m.m21) && finite(m.m22);
}

void require_finite(const Mat2& m, const char* who) {
    if (!finite(m)) throw invalid_input(std::string(who) + ": non-finite matrix entry");
}

void require_finite(const PolarizationVector& v, const char* who) {
    if (!finite(v)) throw invalid_input(std::string(who) + ": non-finite vector component");
}

}  // namespace

double PolarizationVector::norm() const { return std::sqrt(norm_sq()); }

PolarizationVector PolarizationVector::normalized() const {
    require_finite(*this, "normalized");
    const double n = norm();
    if (n < 1e-300) throw invalid_input("normalized: zero polarization vector");
    return {e1 / n, e2 / n};
}

PolarizationVector operator+(const PolarizationVector& a, const PolarizationVector& b) {
    return {a.e1 + b.e1, a.e2 + b.e2};
}

PolarizationVector operator-(const PolarizationVector& a, const PolarizationVector& b) {
    return {a.e1 - b.e1, a.e2 - b.e2};
}

PolarizationVector operator*(Complex s, const PolarizationVector& v) {
    return {s * v.e1, s * v.e2};
}

Complex hermitian_inner(const PolarizationVector& a, const PolarizationVector& b) {
    require_finite(a, "hermitian_inner");
    require_finite(b, "hermitian_inner");
    return std::conj(a.e1) * b.e1 + std::conj(a.e2) * b.e2;
}

PolarizationVector to_circular_basis(const PolarizationVector& v) {
    require_finite(v, "to_circular_basis");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return {inv_sqrt2 * (v.e1 + Complex(0, 1) * v.e2),
            inv_sqrt2 * (v.e1 - Complex(0, 1) * v.e2)};
}

PolarizationVector from_circular_basis(const PolarizationVector& v) {
    require_finite(v, "from_circular_basis");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // Inverse of the map above: e1 = (p + m)/sqrt2, e2 = (p - m)/(i sqrt2).
    return {inv_sqrt2 * (v.e1 + v.e2),
            inv_sqrt2 * (v.e1 - v.e2) / Complex(0, 1)};
}

double Mat2::max_abs() const {
    return std::max(std::max(std::abs(m11), std::abs(m12)),
                    std::max(std::abs(m21), std::abs(m22)));
}

bool Mat2::is_anti_hermitian(double tol) const {
    const double scale = std::max(1.0, max_abs());
    const double r = std::max({std::abs(m11 + std::conj(m11)),
                               std::abs(m22 + std::conj(m22)),
                               std::abs(m12 + std::conj(m21))});
    return r <= tol * scale;
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21, a.m22 + b.m22};
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.m11 - b.m11, a.m12 - b.m12, a.m21 - b.m21, a.m22 - b.m22};
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

Mat2 operator*(Complex s, const Mat2& m) {
    return {s * m.m11, s * m.m12, s * m.m21, s * m.m22};
}

PolarizationVector operator*(const Mat2& m, const PolarizationVector& v) {
    return {m.m11 * v.e1 + m.m12 * v.e2, m.m21 * v.e1 + m.m22 * v.e2};
}

Mat2 identity2() { return {1, 0, 0, 1}; }

Mat2 adjoint(const Mat2& m) {
    return {std::conj(m.m11), std::conj(m.m21), std::conj(m.m12), std::conj(m.m22)};
}

Mat2 inverse(const Mat2& m) {
    require_finite(m, "inverse");
    const Complex d = m.det();
    if (std::abs(d) < 1e-300) throw invalid_input("inverse: singular matrix");
    const Complex s = 1.0 / d;
    return {s * m.m22, -s * m.m12, -s * m.m21, s * m.m11};
}

double max_abs_diff(const Mat2& a, const Mat2& b) { return (a - b).max_abs(); }

Transfer2x2 rotation_matrix(double angle) {
    if (!std::isfinite(angle)) throw invalid_input("rotation_matrix: non-finite angle");
    const double c = std::cos(angle), s = std::sin(angle);
    return {c, -s, s, c};
}

namespace {

// exp for a traceless matrix: A^2 = -det(A) I, so with d = sqrt(det A)
// exp(A) = cos(d) I + (sin(d)/d) A, valid for complex d on either branch.
Mat2 exp_traceless(const Mat2& a) {
    const Complex d = std::sqrt(a.det());
    Complex c, sinc;
    if (std::abs(d) < 1e-4) {
        // Series for cos(d) and sin(d)/d; |d|<1e-4 keeps truncation < 1e-17.
        const Complex d2 = d * d;
        c = 1.0 - d2 / 2.0 + d2 * d2 / 24.0;
        sinc = 1.0 - d2 / 6.0 + d2 * d2 / 120.0;
    } else {
        c = std::cos(d);
        sinc = std::sin(d) / d;
    }
    return (c * identity2()) + (sinc * a);
}

// Scaling-and-squaring with the [6/6] diagonal rational approximant.
Mat2 exp_squaring(const Mat2& a) {
    static const double coef[7] = {1.0,         1.0 / 2.0,    5.0 / 44.0, 1.0 / 66.0,
                                   1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0};
    int squarings = 0;
    double scale = a.max_abs();
    while (scale > 0.5 && squarings < 60) {
        scale /= 2.0;
        ++squarings;
    }
    const Mat2 b = Complex(std::ldexp(1.0, -squarings)) * a;
    Mat2 num = Complex(coef[0]) * identity2();
    Mat2 den = num;
    Mat2 power = identity2();
    for (int j = 1; j <= 6; ++j) {
        power = power * b;
        num = num + Complex(coef[j]) * power;
        den = den + Complex((j % 2 == 0) ? coef[j] : -coef[j]) * power;
    }
    Mat2 r = inverse(den) * num;
    for (int j = 0; j < squarings; ++j) r = r * r;
    return r;
}

}  // namespace

Transfer2x2 mat_exp(const Generator2x2& n, double z) {
    require_finite(n, "mat_exp");
    if (!std::isfinite(z)) throw invalid_input("mat_exp: non-finite thickness");
    const Mat2 a = Complex(z) * n;
    const double scale = std::max(1.0, a.max_abs());
    if (std::abs(a.trace()) <= 1e-13 * scale) return exp_traceless(a);
    return exp_squaring(a);
}

std::array<Eigenpair, 2> eigenpairs(const Mat2& m) {
    require_finite(m, "eigenpairs");
    const Complex half_tr = 0.5 * m.trace();
    const Complex disc = std::sqrt(half_tr * half_tr - m.det());
    Complex l1 = half_tr + disc;
    Complex l2 = half_tr - disc;
    const double scale = std::max(1.0, m.max_abs());
    if (std::abs(l1 - l2) <= 1e-12 * scale) {
        throw degeneracy_error("eigenpairs: repeated eigenvalue", half_tr);
    }
    if (l1.imag() < l2.imag() ||
        (l1.imag() == l2.imag() && l1.real() < l2.real())) {
        std::swap(l1, l2);
    }

    auto vector_for = [&](Complex lambda) -> PolarizationVector {
        // Null vector of (M - lambda I); pick the better-conditioned row.
        const PolarizationVector a{m.m12, lambda - m.m11};
        const PolarizationVector b{lambda - m.m22, m.m21};
        PolarizationVector v = (a.norm_sq() >= b.norm_sq()) ? a : b;
        if (std::abs(v.e2) > 1e-12 * v.norm()) {
            return {v.e1 / v.e2, 1.0};
        }
        return {1.0, v.e2 / v.e1};
    };

    return {Eigenpair{l1, vector_for(l1)}, Eigenpair{l2, vector_for(l2)}};
}

}  // namespace twistphase

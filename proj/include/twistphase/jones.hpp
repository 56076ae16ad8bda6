#pragma once

#include <array>
#include <complex>

#include "twistphase/errors.hpp"

// Core 2x2 complex layer: polarization vectors, transfer/generator matrices,
// rotations, the matrix exponential and the eigen solver everything else
// builds on.
namespace twistphase {

using Complex = std::complex<double>;

/// Transverse field amplitudes (e1, e2) in the linear x/y basis.
struct PolarizationVector {
    Complex e1{};
    Complex e2{};

    double norm_sq() const { return std::norm(e1) + std::norm(e2); }
    double norm() const;
    /// Same ray scaled to unit intensity. Zero vector -> invalid_input.
    PolarizationVector normalized() const;
};

PolarizationVector operator+(const PolarizationVector& a, const PolarizationVector& b);
PolarizationVector operator-(const PolarizationVector& a, const PolarizationVector& b);
PolarizationVector operator*(Complex s, const PolarizationVector& v);

/// Conjugate-linear in the first argument: conj(a1)*b1 + conj(a2)*b2.
Complex hermitian_inner(const PolarizationVector& a, const PolarizationVector& b);

/// Circular-component spinor (psi_plus, psi_minus) = ((e1 + i e2), (e1 - i e2))/sqrt(2).
PolarizationVector to_circular_basis(const PolarizationVector& v);
PolarizationVector from_circular_basis(const PolarizationVector& v);

/// 2x2 complex matrix, row-major entries. Used both for finite transfer
/// matrices and for the per-unit-thickness generators (dE/dz = N E).
struct Mat2 {
    Complex m11{}, m12{}, m21{}, m22{};

    Complex trace() const { return m11 + m22; }
    Complex det() const { return m11 * m22 - m12 * m21; }
    /// Largest entry magnitude; the scale used by relative tolerances.
    double max_abs() const;
    /// Lossless tag: true when the matrix is anti-Hermitian (M^dag = -M)
    /// within an absolute tolerance scaled by max(1, max_abs()).
    bool is_anti_hermitian(double tol = 1e-12) const;
};

using Transfer2x2 = Mat2;
using Generator2x2 = Mat2;

Mat2 operator+(const Mat2& a, const Mat2& b);
Mat2 operator-(const Mat2& a, const Mat2& b);
Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator*(Complex s, const Mat2& m);
PolarizationVector operator*(const Mat2& m, const PolarizationVector& v);

Mat2 identity2();
Mat2 adjoint(const Mat2& m);
/// Inverse via the adjugate; |det| below 1e-300 -> invalid_input.
Mat2 inverse(const Mat2& m);
double max_abs_diff(const Mat2& a, const Mat2& b);

/// Real rotation by `angle` radians: [[cos, -sin],[sin, cos]].
Transfer2x2 rotation_matrix(double angle);

/// exp(N z). Traceless input (within 1e-13 * scale) uses the exact two-term
/// closed form cos(dz) I + (sin(dz)/d) N with d = sqrt(det N); otherwise
/// scaling-and-squaring with a [6/6] rational approximant.
Transfer2x2 mat_exp(const Generator2x2& n, double z);

struct Eigenpair {
    Complex value;
    PolarizationVector vector;
};

/// Both eigenpairs, sorted by descending imaginary part of the value
/// (ties: descending real part). Eigenvectors are scaled so the second
/// component is exactly 1 when it is nonzero, else the first is 1.
/// A repeated eigenvalue raises degeneracy_error carrying that value.
std::array<Eigenpair, 2> eigenpairs(const Mat2& m);

}  // namespace twistphase

#pragma once

#include <functional>
#include <vector>

#include "twistphase/jones.hpp"

// Integration of dE/dz = N(z) E and the Poincare-sphere view of the result.
namespace twistphase {

/// Real 3-vector in Stokes space (s1, s2, s3).
struct Vec3 {
    double x = 0, y = 0, z = 0;
};

Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(double s, const Vec3& v);
double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& v);
/// Unit vector; zero input -> invalid_input.
Vec3 normalized(const Vec3& v);

/// Stokes description of a ray: total intensity s0 and the vector part.
/// Convention: s1 = |e1|^2 - |e2|^2, s2 = 2 Re(conj(e1) e2),
/// s3 = 2 Im(conj(e1) e2), so (1, i) sits at the s3 = +1 pole.
struct StokesState {
    double s0 = 0;
    Vec3 s;

    /// Vector part scaled to the unit sphere.
    Vec3 unit() const;
};

/// Map a field to Stokes form. Zero vector -> invalid_input.
StokesState to_stokes(const PolarizationVector& v);

/// Sampled propagation history; z strictly increasing.
struct TraceSample {
    double z = 0;
    PolarizationVector state;
    StokesState stokes;
};

struct PropagationTrace {
    std::vector<TraceSample> samples;
};

/// Closed-form propagation through a homogeneous slab: mat_exp(n, z) * input.
/// Requires z >= 0.
PolarizationVector propagate_constant(const Generator2x2& n,
                                      const PolarizationVector& input, double z);

/// Fixed-step RK4 for a z-dependent generator, sampled at every node.
/// Requires step > 0 and step <= z; a short final step lands exactly on z.
PropagationTrace propagate_varying(const std::function<Generator2x2(double)>& n_of_z,
                                   const PolarizationVector& input, double z,
                                   double step);

/// Exact transfer through a uniformly twisted medium (twist rate k):
/// R(kz) * exp((N0 - k R(pi/2)) z). Solves dE/dz = R(kz) N0 R(-kz) E.
Transfer2x2 rotating_frame_transfer(const Generator2x2& n0, double k, double z);

/// Poincare-sphere precession induced by a lossless generator:
/// ds/dz = axis_rate x s. Returns {axis, rate} with rate >= 0; for the polar
/// form the rate is 2 eta and the axis is (0, sin phi, cos phi).
/// Zero generator -> rate 0 with the default axis (0, 0, 1).
/// Lossy (non-anti-Hermitian) input -> unsupported_medium.
struct Precession {
    Vec3 axis{0, 0, 1};
    double rate = 0;
    Vec3 omega() const { return rate * axis; }
};

Precession precession_axis(const Generator2x2& n);

}  // namespace twistphase

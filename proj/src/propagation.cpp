#include "twistphase/propagation.hpp"

#include <cmath>
#include <numbers>

namespace twistphase {

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

Vec3 normalized(const Vec3& v) {
    const double n = norm(v);
    if (n < 1e-300) throw invalid_input("normalized: zero vector");
    return (1.0 / n) * v;
}

Vec3 StokesState::unit() const {
    if (s0 < 1e-300) throw invalid_input("StokesState::unit: zero intensity");
    return (1.0 / s0) * s;
}

StokesState to_stokes(const PolarizationVector& v) {
    const double s0 = v.norm_sq();
    if (s0 < 1e-300) throw invalid_input("to_stokes: zero polarization vector");
    if (!std::isfinite(s0)) throw invalid_input("to_stokes: non-finite component");
    const Complex w = std::conj(v.e1) * v.e2;
    return {s0, {std::norm(v.e1) - std::norm(v.e2), 2 * w.real(), 2 * w.imag()}};
}

PolarizationVector propagate_constant(const Generator2x2& n,
                                      const PolarizationVector& input, double z) {
    if (!std::isfinite(z) || z < 0) {
        throw invalid_input("propagate_constant: thickness must be finite and >= 0");
    }
    return mat_exp(n, z) * input;
}

PropagationTrace propagate_varying(const std::function<Generator2x2(double)>& n_of_z,
                                   const PolarizationVector& input, double z,
                                   double step) {
    if (!std::isfinite(z) || !std::isfinite(step) || step <= 0 || step > z) {
        throw invalid_input("propagate_varying: need 0 < step <= z");
    }

    auto rk4_step = [&](double z0, double h, const PolarizationVector& e) {
        const PolarizationVector k1 = n_of_z(z0) * e;
        const Generator2x2 n_mid = n_of_z(z0 + h / 2);
        const PolarizationVector k2 = n_mid * (e + Complex(h / 2) * k1);
        const PolarizationVector k3 = n_mid * (e + Complex(h / 2) * k2);
        const PolarizationVector k4 = n_of_z(z0 + h) * (e + Complex(h) * k3);
        return e + Complex(h / 6) * (k1 + Complex(2) * k2 + Complex(2) * k3 + k4);
    };

    // Nodes at multiples of step, plus a short final step onto z when the
    // interval does not divide evenly. Built up front so the last node is
    // exactly z (no accumulation drift).
    std::vector<double> nodes;
    const auto n_full = static_cast<long long>(std::floor(z / step + 1e-9));
    for (long long i = 0; i <= n_full; ++i) nodes.push_back(i * step);
    if (z - nodes.back() > 1e-12 * std::max(1.0, z)) {
        nodes.push_back(z);
    } else {
        nodes.back() = z;
    }

    PropagationTrace trace;
    PolarizationVector state = input;
    trace.samples.push_back({0.0, state, to_stokes(state)});
    for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
        state = rk4_step(nodes[j], nodes[j + 1] - nodes[j], state);
        trace.samples.push_back({nodes[j + 1], state, to_stokes(state)});
    }
    return trace;
}

Transfer2x2 rotating_frame_transfer(const Generator2x2& n0, double k, double z) {
    if (!std::isfinite(k) || !std::isfinite(z)) {
        throw invalid_input("rotating_frame_transfer: non-finite parameter");
    }
    const Generator2x2 frame =
        n0 - Complex(k) * rotation_matrix(std::numbers::pi / 2);
    return rotation_matrix(k * z) * mat_exp(frame, z);
}

Precession precession_axis(const Generator2x2& n) {
    if (!n.is_anti_hermitian()) {
        throw unsupported_medium("precession_axis: generator is not lossless");
    }
    // Write -iN = c0 I + (1/2)(h1 sz + h2 sx + h3 sy) (Pauli matrices mapped
    // onto s1, s2, s3 by the to_stokes convention); then ds/dz = (-h) x s.
    const double h1 = n.m11.imag() - n.m22.imag();
    const double h2 = 2 * n.m21.imag();
    const double h3 = -2 * n.m21.real();
    const Vec3 omega{-h1, -h2, -h3};
    const double rate = norm(omega);
    Precession out;
    out.rate = rate;
    if (rate > 1e-14 * std::max(1.0, n.max_abs())) {
        out.axis = (1.0 / rate) * omega;
    }
    return out;
}

}  // namespace twistphase

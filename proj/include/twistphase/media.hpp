#pragma once

#include "twistphase/jones.hpp"

// Medium descriptions: birefringence generators in both parameterizations,
// the twist laws, the state-space (projector) route to the generator, and
// the rays the phase extraction works on.
namespace twistphase {

/// How the medium twists along z.
enum class TwistMode {
    none,                   // homogeneous: N(z) = N0
    thickness_independent,  // constant twisted generator N' = N0 - k R(pi/2)
    thickness_dependent,    // locally rotated generator N(z) = R(kz) N0 R(-kz)
};

/// Lossless generator from circular (tau) and linear (rho) birefringence
/// rates: [[0, -(tau + i rho)], [tau - i rho, 0]]. Anti-Hermitian for all
/// real (tau, rho), so propagation is unitary.
Generator2x2 birefringence_generator(double tau, double rho);

/// The same family in polar form: eta * [[0, -e^{i phi}], [e^{-i phi}, 0]].
/// Identical to birefringence_generator(eta cos phi, eta sin phi).
/// Requires eta >= 0; use eta_phi_generator_extended for signed eta.
Generator2x2 eta_phi_generator(double eta, double phi);

/// Extended-range variant admitting negative eta (reversed handedness).
Generator2x2 eta_phi_generator_extended(double eta, double phi);

/// Thickness-dependent twist law: the local generator R(kz) N0 R(-kz) at
/// depth z under twist rate k.
Generator2x2 twist_dependent(const Generator2x2& n0, double k, double z);

/// Thickness-independent (rotating-frame) twist law: N0 - k R(pi/2).
Generator2x2 twist_independent(const Generator2x2& n0, double k);

/// Point on the state sphere, with the helicity parameter chi carried along.
struct SpinorState {
    double theta = 0;  // polar angle in [0, pi]
    double phi = 0;    // azimuth, stored in [0, 2 pi)
    double chi = 0;    // helicity parameter, stored in [0, 2 pi)

    SpinorState() = default;
    SpinorState(double theta_, double phi_, double chi_ = 0);

    /// (cos(theta/2) e^{i phi}, sin(theta/2)) - chi dropped.
    PolarizationVector realize() const;
    /// Two-phase form (cos(theta/2) e^{i(phi+chi)/2}, sin(theta/2) e^{-i(phi-chi)/2});
    /// differs from realize() by a global phase only.
    PolarizationVector realize_full() const;
};

/// Projector-style polarization matrix psi psi^dag - I/2 for the SpinorState
/// spinor: (1/2) [[cos th, sin th e^{i phi}], [sin th e^{-i phi}, -cos th]].
/// Hermitian, traceless, eigenvalues +-1/2, and M psi = psi/2.
Mat2 polarization_matrix(double theta, double phi);

/// Output of the state-space derivation of the generator, with the
/// comparison against the polar-form reference attached.
struct GeneratorDerivation {
    Generator2x2 generator;      // (dM/d theta)(d theta/dz) M^{-1}, z = cos theta
    double eta_effective;        // off-diagonal magnitude, 1/sin theta
    Generator2x2 reference;      // eta_phi_generator(eta_effective, phi)
    double max_abs_difference;   // entry-wise gap between the two
};

/// Derive the generator from the polarization matrix: exact evaluation of
/// (dM/d theta)(d theta/dz) M^{-1} with z = cos theta, giving
/// (1/sin theta) [[0, e^{i phi}], [-e^{-i phi}, 0]]. This is the negative of
/// the polar-form reference; the derivation reports both and their gap
/// rather than reconciling them. sin theta = 0 -> singular_birefringence.
GeneratorDerivation derive_generator_from_M(double theta, double phi);

/// Ray obtained by rotating the polar-form eigenvector (i e^{i phi}, 1) by
/// the twist angle: (i e^{i phi} cos th + sin th, -i e^{i phi} sin th + cos th).
PolarizationVector twisted_ray(double theta, double phi);

/// Untwisted polar-form eigenvector (i e^{i phi}, 1), the +i eta eigenstate.
PolarizationVector eigen_ray(double phi);

/// Circular basis rays: lcp = (1, i), rcp = (1, -i).
PolarizationVector lcp_ray();
PolarizationVector rcp_ray();

/// Validated medium description. Exactly one parameterization is given at
/// construction; the other is derived (tau = eta cos phi, rho = eta sin phi).
class MediumSpec {
  public:
    static MediumSpec from_eta_phi(double eta, double phi, double k = 0,
                                   TwistMode mode = TwistMode::none);
    /// Admits negative eta (reversed handedness); the default factory rejects it.
    static MediumSpec from_eta_phi_extended(double eta, double phi, double k = 0,
                                            TwistMode mode = TwistMode::none);
    static MediumSpec from_tau_rho(double tau, double rho, double k = 0,
                                   TwistMode mode = TwistMode::none);

    double eta() const { return eta_; }
    double phi() const { return phi_; }
    double tau() const { return eta_ * std::cos(phi_); }
    double rho() const { return eta_ * std::sin(phi_); }
    double k() const { return k_; }
    TwistMode twist_mode() const { return mode_; }

    /// Untwisted generator N0.
    Generator2x2 generator() const;
    /// Generator at depth z under the configured twist mode.
    Generator2x2 local_generator(double z) const;

  private:
    MediumSpec(double eta, double phi, double k, TwistMode mode)
        : eta_(eta), phi_(phi), k_(k), mode_(mode) {}
    double eta_, phi_, k_;
    TwistMode mode_;
};

}  // namespace twistphase

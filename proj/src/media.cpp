#include "twistphase/media.hpp"

#include <cmath>
#include <numbers>

namespace twistphase {

namespace {

constexpr double pi = std::numbers::pi;

void require_finite(double x, const char* who, const char* what) {
    if (!std::isfinite(x)) {
        throw invalid_input(std::string(who) + ": non-finite " + what);
    }
}

double wrap_two_pi(double a) {
    const double w = std::fmod(a, 2 * pi);
    return w < 0 ? w + 2 * pi : w;
}

}  // namespace

Generator2x2 birefringence_generator(double tau, double rho) {
    require_finite(tau, "birefringence_generator", "tau");
    require_finite(rho, "birefringence_generator", "rho");
    const Complex c(tau, rho);
    return {0.0, -c, std::conj(c), 0.0};
}

Generator2x2 eta_phi_generator_extended(double eta, double phi) {
    require_finite(eta, "eta_phi_generator", "eta");
    require_finite(phi, "eta_phi_generator", "phi");
    const Complex entry = eta * Complex(std::cos(phi), std::sin(phi));
    return {0.0, -entry, std::conj(entry), 0.0};
}

Generator2x2 eta_phi_generator(double eta, double phi) {
    if (std::isfinite(eta) && eta < 0) {
        throw invalid_input("eta_phi_generator: eta must be >= 0 "
                            "(use eta_phi_generator_extended for signed eta)");
    }
    return eta_phi_generator_extended(eta, phi);
}

Generator2x2 twist_dependent(const Generator2x2& n0, double k, double z) {
    require_finite(k, "twist_dependent", "k");
    require_finite(z, "twist_dependent", "z");
    const double angle = k * z;
    return rotation_matrix(angle) * n0 * rotation_matrix(-angle);
}

Generator2x2 twist_independent(const Generator2x2& n0, double k) {
    require_finite(k, "twist_independent", "k");
    return n0 - Complex(k) * rotation_matrix(pi / 2);
}

SpinorState::SpinorState(double theta_, double phi_, double chi_) {
    require_finite(theta_, "SpinorState", "theta");
    require_finite(phi_, "SpinorState", "phi");
    require_finite(chi_, "SpinorState", "chi");
    if (theta_ < 0 || theta_ > pi) {
        throw invalid_input("SpinorState: theta outside [0, pi]");
    }
    theta = theta_;
    phi = wrap_two_pi(phi_);
    chi = wrap_two_pi(chi_);
}

PolarizationVector SpinorState::realize() const {
    return {std::polar(std::cos(theta / 2), phi), std::sin(theta / 2)};
}

PolarizationVector SpinorState::realize_full() const {
    return {std::polar(std::cos(theta / 2), (phi + chi) / 2),
            std::polar(std::sin(theta / 2), -(phi - chi) / 2)};
}

Mat2 polarization_matrix(double theta, double phi) {
    require_finite(phi, "polarization_matrix", "phi");
    if (!std::isfinite(theta) || theta < 0 || theta > pi) {
        throw invalid_input("polarization_matrix: theta outside [0, pi]");
    }
    const double c = std::cos(theta), s = std::sin(theta);
    const Complex e = std::polar(1.0, phi);
    return {0.5 * c, 0.5 * s * e, 0.5 * s * std::conj(e), -0.5 * c};
}

GeneratorDerivation derive_generator_from_M(double theta, double phi) {
    require_finite(theta, "derive_generator_from_M", "theta");
    require_finite(phi, "derive_generator_from_M", "phi");
    const double s = std::sin(theta);
    if (std::abs(s) < 1e-12) {
        throw singular_birefringence(
            "derive_generator_from_M: generator undefined at sin(theta) = 0");
    }
    // dM/dtheta * M^{-1} = [[0, -e^{i phi}], [e^{-i phi}, 0]] exactly
    // (M^{-1} = 4M for the traceless half-projector), and dtheta/dz = -1/sin.
    const Complex e = std::polar(1.0 / s, phi);
    GeneratorDerivation out;
    out.generator = {0.0, e, -std::conj(e), 0.0};
    out.eta_effective = 1.0 / s;
    out.reference = eta_phi_generator(out.eta_effective, phi);
    out.max_abs_difference = max_abs_diff(out.generator, out.reference);
    return out;
}

PolarizationVector eigen_ray(double phi) {
    require_finite(phi, "eigen_ray", "phi");
    return {Complex(0, 1) * std::polar(1.0, phi), 1.0};
}

PolarizationVector twisted_ray(double theta, double phi) {
    require_finite(theta, "twisted_ray", "theta");
    const double c = std::cos(theta), s = std::sin(theta);
    const Complex ie = Complex(0, 1) * std::polar(1.0, phi);
    return {ie * c + s, -ie * s + c};
}

PolarizationVector lcp_ray() { return {1.0, Complex(0, 1)}; }
PolarizationVector rcp_ray() { return {1.0, Complex(0, -1)}; }

MediumSpec MediumSpec::from_eta_phi(double eta, double phi, double k, TwistMode mode) {
    require_finite(eta, "MediumSpec", "eta");
    if (eta < 0) {
        throw invalid_input("MediumSpec: eta must be >= 0 "
                            "(use from_eta_phi_extended for signed eta)");
    }
    return from_eta_phi_extended(eta, phi, k, mode);
}

MediumSpec MediumSpec::from_eta_phi_extended(double eta, double phi, double k,
                                             TwistMode mode) {
    require_finite(eta, "MediumSpec", "eta");
    require_finite(phi, "MediumSpec", "phi");
    require_finite(k, "MediumSpec", "k");
    return MediumSpec(eta, wrap_two_pi(phi), k, mode);
}

MediumSpec MediumSpec::from_tau_rho(double tau, double rho, double k, TwistMode mode) {
    require_finite(tau, "MediumSpec", "tau");
    require_finite(rho, "MediumSpec", "rho");
    require_finite(k, "MediumSpec", "k");
    return MediumSpec(std::hypot(tau, rho), wrap_two_pi(std::atan2(rho, tau)), k, mode);
}

Generator2x2 MediumSpec::generator() const { return eta_phi_generator(eta_, phi_); }

Generator2x2 MediumSpec::local_generator(double z) const {
    switch (mode_) {
        case TwistMode::none:
            return generator();
        case TwistMode::thickness_independent:
            return twist_independent(generator(), k_);
        case TwistMode::thickness_dependent:
            return twist_dependent(generator(), k_, z);
    }
    throw invalid_input("MediumSpec: unknown twist mode");
}

}  // namespace twistphase

#include "twistphase/phases.hpp"

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

}  // namespace

PhaseValue bilinear_phase(const PolarizationVector& eps, const Generator2x2& n,
                          bool normalized) {
    const double nsq = eps.norm_sq();
    if (!std::isfinite(nsq) || nsq < 1e-300) {
        throw invalid_input("bilinear_phase: zero or non-finite state");
    }
    Complex value = hermitian_inner(eps, n * eps);
    if (normalized) value /= nsq;
    return {value};
}

const std::vector<ClosedFormKind>& all_closed_form_kinds() {
    static const std::vector<ClosedFormKind> kinds = {
        ClosedFormKind::dynamical_eigen, ClosedFormKind::net_eigen_general,
        ClosedFormKind::net_eigen_normal, ClosedFormKind::geom_eigen_general,
        ClosedFormKind::geom_eigen_normal, ClosedFormKind::geom_eigen_pole,
        ClosedFormKind::dynamical_lcp, ClosedFormKind::dynamical_rcp,
        ClosedFormKind::net_lcp, ClosedFormKind::geom_lcp,
    };
    return kinds;
}

std::string to_string(ClosedFormKind kind) {
    switch (kind) {
        case ClosedFormKind::dynamical_eigen: return "dynamical_eigen";
        case ClosedFormKind::net_eigen_general: return "net_eigen_general";
        case ClosedFormKind::net_eigen_normal: return "net_eigen_normal";
        case ClosedFormKind::geom_eigen_general: return "geom_eigen_general";
        case ClosedFormKind::geom_eigen_normal: return "geom_eigen_normal";
        case ClosedFormKind::geom_eigen_pole: return "geom_eigen_pole";
        case ClosedFormKind::dynamical_lcp: return "dynamical_lcp";
        case ClosedFormKind::dynamical_rcp: return "dynamical_rcp";
        case ClosedFormKind::net_lcp: return "net_lcp";
        case ClosedFormKind::geom_lcp: return "geom_lcp";
    }
    throw invalid_input("to_string: unknown closed-form kind");
}

PhaseValue closed_form(ClosedFormKind kind, double eta, double phi, double k,
                       double theta) {
    require_finite(eta, "closed_form", "eta");
    require_finite(phi, "closed_form", "phi");
    require_finite(k, "closed_form", "k");
    require_finite(theta, "closed_form", "theta");
    const double c = std::cos(phi);
    const double c2 = std::cos(2 * phi);
    const double s2t = std::sin(theta) * std::sin(theta);
    double im = 0;
    switch (kind) {
        case ClosedFormKind::dynamical_eigen: im = 2 * eta; break;
        case ClosedFormKind::net_eigen_general: im = 2 * eta * s2t * c2 - 2 * k * c; break;
        case ClosedFormKind::net_eigen_normal: im = 2 * (eta * c2 - k * c); break;
        case ClosedFormKind::geom_eigen_general:
            im = 2 * eta * (s2t * c2 - 1) - 2 * k * c;
            break;
        case ClosedFormKind::geom_eigen_normal: im = 2 * eta * (c2 - 1) - 2 * k * c; break;
        case ClosedFormKind::geom_eigen_pole: im = -2 * (eta + k * c); break;
        case ClosedFormKind::dynamical_lcp: im = -2 * eta * c; break;
        case ClosedFormKind::dynamical_rcp: im = 2 * eta * c; break;
        case ClosedFormKind::net_lcp: im = 2 * k - 2 * eta * c; break;
        case ClosedFormKind::geom_lcp: im = 2 * k; break;
    }
    return {Complex(0, im)};
}

PhaseValue geometric_phase(double theta, double phi, double eta, double k) {
    const Generator2x2 n0 = eta_phi_generator(eta, phi);
    const Generator2x2 n_twisted = twist_independent(n0, k);
    const PhaseValue net = bilinear_phase(twisted_ray(theta, phi), n_twisted);
    const PhaseValue dyn = bilinear_phase(eigen_ray(phi), n0);
    return {net.value - dyn.value};
}

double pancharatnam_phase(const std::vector<PolarizationVector>& states, bool closed) {
    if (states.size() < 2) {
        throw invalid_input("pancharatnam_phase: need at least two states");
    }
    Complex product = 1;
    auto accumulate = [&](const PolarizationVector& a, const PolarizationVector& b) {
        const Complex overlap = hermitian_inner(a, b);
        // arg() of a vanishing overlap carries no information.
        if (std::abs(overlap) <= 1e-12 * a.norm() * b.norm()) {
            throw undefined_phase("pancharatnam_phase: consecutive states (near-)orthogonal");
        }
        product *= overlap;
    };
    for (std::size_t i = 0; i + 1 < states.size(); ++i) {
        accumulate(states[i], states[i + 1]);
    }
    if (closed) accumulate(states.back(), states.front());
    return std::arg(product);
}

double solid_angle(const std::vector<Vec3>& vertices) {
    // Collapse consecutive duplicates (incl. last == first) so every edge
    // has a well-defined tangent.
    std::vector<Vec3> v;
    for (const Vec3& p : vertices) {
        const Vec3 u = normalized(p);
        if (v.empty() || norm(u - v.back()) > 1e-12) v.push_back(u);
    }
    while (v.size() > 1 && norm(v.front() - v.back()) <= 1e-12) v.pop_back();
    const std::size_t n = v.size();
    if (n < 3) return 0;

    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& a = v[i];
        const Vec3& b = v[(i + 1) % n];
        if (norm(a + b) <= 1e-9) {
            throw ambiguous_geodesic("solid_angle: consecutive antipodal vertices");
        }
    }

    // Spherical excess with left-side interior angles: at each vertex the
    // angle from the outgoing tangent to the incoming tangent, measured
    // counterclockwise about the vertex normal, folded into [0, 2 pi).
    auto tangent_towards = [](const Vec3& from, const Vec3& to) {
        return normalized(to - dot(to, from) * from);
    };
    double angle_sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& prev = v[(i + n - 1) % n];
        const Vec3& here = v[i];
        const Vec3& next = v[(i + 1) % n];
        const Vec3 t_prev = tangent_towards(here, prev);
        const Vec3 t_next = tangent_towards(here, next);
        double a = std::atan2(dot(here, cross(t_next, t_prev)), dot(t_next, t_prev));
        if (a < 0) a += 2 * pi;
        angle_sum += a;
    }
    double omega = angle_sum - static_cast<double>(n - 2) * pi;
    // A clockwise circuit sums the complementary angles; fold back to the
    // signed value with |omega| <= 2 pi.
    if (omega > 2 * pi) omega -= 4 * pi;
    return omega;
}

std::vector<ConformanceRow> conformance_report(const ConformanceGrid& grid) {
    std::vector<ConformanceRow> rows;
    rows.reserve(grid.eta.size() * grid.k.size() * grid.phi.size() *
                 grid.theta.size() * all_closed_form_kinds().size());
    for (double eta : grid.eta) {
        for (double k : grid.k) {
            for (double phi : grid.phi) {
                const Generator2x2 n0 = eta_phi_generator(eta, phi);
                const Generator2x2 nt = twist_independent(n0, k);
                const double dyn_eigen = bilinear_phase(eigen_ray(phi), n0).imag();
                const double dyn_lcp = bilinear_phase(lcp_ray(), n0).imag();
                const double dyn_rcp = bilinear_phase(rcp_ray(), n0).imag();
                const double net_lcp = bilinear_phase(lcp_ray(), nt).imag();
                for (double theta : grid.theta) {
                    const double net_eigen =
                        bilinear_phase(twisted_ray(theta, phi), nt).imag();
                    auto bilinear_for = [&](ClosedFormKind kind) {
                        switch (kind) {
                            case ClosedFormKind::dynamical_eigen: return dyn_eigen;
                            case ClosedFormKind::net_eigen_general:
                            case ClosedFormKind::net_eigen_normal: return net_eigen;
                            case ClosedFormKind::geom_eigen_general:
                            case ClosedFormKind::geom_eigen_normal:
                            case ClosedFormKind::geom_eigen_pole:
                                return net_eigen - dyn_eigen;
                            case ClosedFormKind::dynamical_lcp: return dyn_lcp;
                            case ClosedFormKind::dynamical_rcp: return dyn_rcp;
                            case ClosedFormKind::net_lcp: return net_lcp;
                            case ClosedFormKind::geom_lcp: return net_lcp - dyn_lcp;
                        }
                        throw invalid_input("conformance_report: unknown kind");
                    };
                    for (ClosedFormKind kind : all_closed_form_kinds()) {
                        ConformanceRow row{};
                        row.eta = eta;
                        row.k = k;
                        row.phi = phi;
                        row.theta = theta;
                        row.kind = kind;
                        row.bilinear_im = bilinear_for(kind);
                        row.printed_im = closed_form(kind, eta, phi, k, theta).imag();
                        row.abs_diff = std::abs(row.bilinear_im - row.printed_im);
                        row.flagged = row.abs_diff > conformance_flag_threshold;
                        rows.push_back(row);
                    }
                }
            }
        }
    }
    return rows;
}

}  // namespace twistphase

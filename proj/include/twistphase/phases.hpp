#pragma once

#include <string>
#include <vector>

#include "twistphase/media.hpp"
#include "twistphase/propagation.hpp"

// Phase extraction: the bilinear (state-generator sandwich) route, the
// corresponding closed-form expressions, the discrete geometric phase of a
// state circuit, and the table comparing the two routes.
namespace twistphase {

/// A per-unit-thickness phase. For lossless generators the bilinear is
/// purely imaginary; `purity` records how far from that the value sits.
struct PhaseValue {
    Complex value{};

    double imag() const { return value.imag(); }
    /// |Re(value)| - zero (to roundoff) for lossless media.
    double purity() const { return std::abs(value.real()); }
};

/// Sandwich phase eps^dag N eps. With `normalized` the result is divided by
/// the intensity |eps|^2. Zero state -> invalid_input.
PhaseValue bilinear_phase(const PolarizationVector& eps, const Generator2x2& n,
                          bool normalized = false);

/// The closed-form catalog. One tag per printed expression; `_eigen` kinds
/// use the polar-form eigenstate/twisted ray, `_lcp`/`_rcp` the circular
/// states. `_normal` fixes theta = pi/2, `_pole` fixes theta = 0.
enum class ClosedFormKind {
    dynamical_eigen,     // 2 eta
    net_eigen_general,   // 2 eta sin^2(th) cos(2 phi) - 2 k cos(phi)
    net_eigen_normal,    // 2 (eta cos(2 phi) - k cos(phi))
    geom_eigen_general,  // 2 eta (sin^2(th) cos(2 phi) - 1) - 2 k cos(phi)
    geom_eigen_normal,   // 2 eta (cos(2 phi) - 1) - 2 k cos(phi)
    geom_eigen_pole,     // -2 (eta + k cos(phi))
    dynamical_lcp,       // -2 eta cos(phi)
    dynamical_rcp,       //  2 eta cos(phi)
    net_lcp,             //  2 k - 2 eta cos(phi)
    geom_lcp,            //  2 k
};

/// All kinds in table order.
const std::vector<ClosedFormKind>& all_closed_form_kinds();
std::string to_string(ClosedFormKind kind);

/// Evaluate the printed expression for `kind`. Kinds that fix theta ignore
/// the theta argument. The value is i times the real coefficient above.
PhaseValue closed_form(ClosedFormKind kind, double eta, double phi, double k,
                       double theta);

/// Definitional geometric phase: bilinear net phase of the twisted ray in
/// the twisted generator, minus the bilinear dynamical phase of the
/// untwisted eigenstate. (The pole closed form differs from this at
/// theta = 0 by 2 eta; conformance_report keeps both visible.)
PhaseValue geometric_phase(double theta, double phi, double eta, double k);

/// Discrete Pancharatnam phase of a state sequence: the argument of the
/// product of consecutive overlaps, times the closing overlap when
/// `closed`. Any (near-)orthogonal consecutive pair -> undefined_phase.
/// For a closed geodesic circuit this equals +Omega/2 (mod 2 pi), with
/// Omega the signed solid angle of the Stokes images under solid_angle's
/// orientation convention.
double pancharatnam_phase(const std::vector<PolarizationVector>& states,
                          bool closed = true);

/// Signed solid angle of the geodesic polygon through `vertices` (unit
/// 3-vectors; non-unit input is normalized). Spherical excess: sum of
/// interior angles minus (n-2) pi, positive for counterclockwise traversal
/// seen from outside, normalized into (-2 pi, 2 pi]. Consecutive duplicate
/// vertices are collapsed; fewer than 3 distinct vertices -> 0.
/// Consecutive antipodal vertices -> ambiguous_geodesic.
double solid_angle(const std::vector<Vec3>& vertices);

/// One comparison row: one grid point, one closed-form kind.
struct ConformanceRow {
    double eta, k, phi, theta;
    ClosedFormKind kind;
    double bilinear_im;  // the bilinear route, Im part
    double printed_im;   // closed_form(kind, ...)
    double abs_diff;
    bool flagged;        // abs_diff > 1e-9
};

struct ConformanceGrid {
    std::vector<double> eta, k, phi, theta;
};

/// Evaluate every kind at every grid point, in lexicographic order
/// (eta, k, phi, theta, kind). Rows with |bilinear - printed| > 1e-9 are
/// flagged: agreement and disagreement are both recorded, never patched.
std::vector<ConformanceRow> conformance_report(const ConformanceGrid& grid);

/// The flag threshold used by conformance_report.
inline constexpr double conformance_flag_threshold = 1e-9;

}  // namespace twistphase

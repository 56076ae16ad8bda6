// Acceptance gate: eleven end-to-end checks, one PASS/FAIL line each.
// Every tolerance is pinned here, next to the check that uses it.
// Exit status 0 only if all checks pass.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "twistphase/media.hpp"
#include "twistphase/phases.hpp"
#include "twistphase/propagation.hpp"
#include "twistphase/scenario.hpp"

using namespace twistphase;

namespace {

constexpr double pi = std::numbers::pi;

int failures = 0;

void report(int criterion, const std::string& name, bool ok,
            const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": "
              << name << " — " << detail << "\n";
    if (!ok) ++failures;
}

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(3);
    out << std::scientific << x;
    return out.str();
}

std::vector<double> linspace(double start, double stop, int count) {
    std::vector<double> values;
    for (int i = 0; i < count; ++i) {
        values.push_back(start + (stop - start) * i / (count - 1));
    }
    return values;
}

double vec_dist(const PolarizationVector& a, const PolarizationVector& b) {
    return (a - b).norm();
}

std::vector<std::vector<double>> parse_numeric_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream stream(text);
    std::string line;
    bool header = true;
    while (std::getline(stream, line)) {
        if (header) {
            header = false;
            continue;
        }
        std::vector<double> row;
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = line.find(',', pos);
            row.push_back(std::stod(line.substr(
                pos, comma == std::string::npos ? std::string::npos : comma - pos)));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// ---------------------------------------------------------------------------

void criterion_1_dynamical_identity() {
    const double tol = 1e-12;
    double worst = 0;
    for (int i = 0; i <= 8; ++i) {
        const double eta = 0.25 * i;
        for (int j = 0; j <= 12; ++j) {
            const double phi = pi / 6 * j;
            const Complex value =
                bilinear_phase(eigen_ray(phi), eta_phi_generator(eta, phi)).value;
            worst = std::max(worst, std::abs(value - Complex(0, 2 * eta)));
        }
    }

    const auto rows = parse_numeric_csv(figure_csv("fig2"));
    std::vector<double> xs, ys;
    for (const auto& row : rows) {
        xs.push_back(row[0]);
        ys.push_back(row[1]);
    }
    const double slope_err = std::abs(oracles::fit_line(xs, ys).slope - 2.0);

    report(1, "dynamical phase identity",
           worst <= tol && slope_err <= tol,
           "max |bilinear - 2 i eta| = " + fmt(worst) + ", line-fit slope error = " +
               fmt(slope_err) + " (tol " + fmt(tol) + ")");
}

void criterion_2_circular_phases() {
    const double tol = 1e-12;
    double worst = 0;
    for (int i = 0; i <= 8; ++i) {
        const double eta = 0.25 * i;
        for (int j = 0; j <= 12; ++j) {
            const double phi = pi / 6 * j;
            const Generator2x2 n0 = eta_phi_generator(eta, phi);
            const Complex dyn_l = bilinear_phase(lcp_ray(), n0).value;
            const Complex dyn_r = bilinear_phase(rcp_ray(), n0).value;
            worst = std::max(worst,
                             std::abs(dyn_l - Complex(0, -2 * eta * std::cos(phi))));
            worst = std::max(worst,
                             std::abs(dyn_r - Complex(0, 2 * eta * std::cos(phi))));
            for (int m = 0; m <= 8; ++m) {
                const double k = 0.25 * m;
                const Complex net_l =
                    bilinear_phase(lcp_ray(), twist_independent(n0, k)).value;
                worst = std::max(
                    worst,
                    std::abs(net_l - Complex(0, 2 * k - 2 * eta * std::cos(phi))));
                worst = std::max(worst, std::abs((net_l - dyn_l) - Complex(0, 2 * k)));
            }
        }
    }
    report(2, "circular-light phases", worst <= tol,
           "max error over dyn/net/geom forms = " + fmt(worst) + " (tol " + fmt(tol) +
               ")");
}

void criterion_3_normal_incidence_agreement() {
    const double tol = 1e-12;
    double worst = 0;
    for (int i = 0; i <= 8; ++i) {
        const double eta = 0.25 * i;
        for (int m = 0; m <= 8; ++m) {
            const double k = 0.25 * m;
            for (int j = 0; j <= 12; ++j) {
                const double phi = pi / 6 * j;
                const Complex definitional = geometric_phase(pi / 2, phi, eta, k).value;
                const Complex printed =
                    closed_form(ClosedFormKind::geom_eigen_normal, eta, phi, k, pi / 2)
                        .value;
                worst = std::max(worst, std::abs(definitional - printed));
            }
        }
    }
    report(3, "normal-incidence geometric phase agreement", worst <= tol,
           "max |definitional - printed| = " + fmt(worst) + " (tol " + fmt(tol) + ")");
}

void criterion_4_conformance_ledger() {
    const double tol = 1e-12;
    ConformanceGrid grid;
    grid.eta = linspace(0, 2, 5);
    grid.k = linspace(0, 2, 5);
    grid.phi = linspace(0, 2 * pi, 9);
    grid.theta = linspace(0, pi / 2, 3);

    auto agreeing_kind = [](ClosedFormKind kind) {
        switch (kind) {
            case ClosedFormKind::dynamical_eigen:
            case ClosedFormKind::net_eigen_normal:
            case ClosedFormKind::geom_eigen_normal:
            case ClosedFormKind::dynamical_lcp:
            case ClosedFormKind::dynamical_rcp:
            case ClosedFormKind::net_lcp:
            case ClosedFormKind::geom_lcp:
                return true;
            default:
                return false;
        }
    };

    int flagged_agreeing = 0;
    int pole_rows = 0;
    double worst_pole_gap = 0;
    for (const ConformanceRow& row : conformance_report(grid)) {
        if (row.theta == pi / 2 && agreeing_kind(row.kind) && row.flagged) {
            ++flagged_agreeing;
        }
        if (row.theta == 0 && row.kind == ClosedFormKind::geom_eigen_pole) {
            ++pole_rows;
            worst_pole_gap =
                std::max(worst_pole_gap, std::abs(row.abs_diff - 2 * row.eta));
        }
    }
    report(4, "conformance ledger",
           flagged_agreeing == 0 && pole_rows > 0 && worst_pole_gap <= tol,
           std::to_string(flagged_agreeing) +
               " flagged rows among agreeing kinds at normal incidence; pole-form "
               "gap deviates from 2 eta by at most " +
               fmt(worst_pole_gap) + " over " + std::to_string(pole_rows) +
               " rows (tol " + fmt(tol) + ")");
}

void criterion_5_eigenstructure() {
    const double tol = 1e-12;
    double worst_value = 0, worst_vector = 0, worst_residual = 0;
    for (double eta : {0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        for (int j = 0; j <= 12; ++j) {
            const double phi = pi / 6 * j;
            const Generator2x2 n = eta_phi_generator(eta, phi);
            const auto pairs = eigenpairs(n);
            const Complex expected_vec1 = Complex(0, 1) * std::polar(1.0, phi);
            worst_value = std::max(worst_value,
                                   std::abs(pairs[0].value - Complex(0, eta)));
            worst_value = std::max(worst_value,
                                   std::abs(pairs[1].value - Complex(0, -eta)));
            worst_vector = std::max(
                worst_vector,
                vec_dist(pairs[0].vector, PolarizationVector{expected_vec1, 1}));
            worst_vector = std::max(
                worst_vector,
                vec_dist(pairs[1].vector, PolarizationVector{-expected_vec1, 1}));
            for (const Eigenpair& p : pairs) {
                worst_residual = std::max(
                    worst_residual, (n * p.vector - p.value * p.vector).norm());
            }
        }
    }
    report(5, "polar-form eigenstructure",
           worst_value <= tol && worst_vector <= tol && worst_residual <= tol,
           "max eigenvalue error " + fmt(worst_value) + ", eigenvector error " +
               fmt(worst_vector) + ", residual " + fmt(worst_residual) + " (tol " +
               fmt(tol) + ")");
}

void criterion_6_propagation() {
    const double tol = 1e-8;
    const double min_order = 3.9;
    const PolarizationVector input{1, 0};

    double worst = 0;
    for (double eta : {0.0, 2.5, 5.0}) {
        for (double k : {0.0, 2.5, 5.0}) {
            for (double phi : {0.0, pi / 4, pi / 2}) {
                const Generator2x2 n0 = eta_phi_generator(eta, phi);
                const auto trace = propagate_varying(
                    [&](double z) { return twist_dependent(n0, k, z); }, input, 1.0,
                    1e-3);
                const PolarizationVector exact =
                    rotating_frame_transfer(n0, k, 1.0) * input;
                worst = std::max(worst, vec_dist(trace.samples.back().state, exact));
            }
        }
    }

    // Convergence order from the stiffest grid point, two octaves of step.
    const Generator2x2 n0 = eta_phi_generator(5.0, pi / 2);
    const PolarizationVector exact = rotating_frame_transfer(n0, 5.0, 1.0) * input;
    auto error_at = [&](double step) {
        const auto trace = propagate_varying(
            [&](double z) { return twist_dependent(n0, 5.0, z); }, input, 1.0, step);
        return vec_dist(trace.samples.back().state, exact);
    };
    const double e_coarse = error_at(4e-3);
    const double e_fine = error_at(1e-3);
    const double order = std::log(e_coarse / e_fine) / std::log(4.0);

    report(6, "twisted propagation vs analytic transfer",
           worst <= tol && order >= min_order,
           "max final-state error " + fmt(worst) + " (tol " + fmt(tol) +
               "), convergence order " + fmt(order) + " (need >= 3.9)");
}

void criterion_7_unitarity_precession() {
    const double s0_tol = 1e-9;
    const double rate_tol = 1e-6;

    double worst_drift = 0;
    for (double eta : {0.5, 2.0, 5.0}) {
        for (double phi : {0.0, pi / 3, pi / 2}) {
            for (double k : {0.0, 1.0}) {
                const Generator2x2 n0 = eta_phi_generator(eta, phi);
                for (const PolarizationVector& input :
                     {PolarizationVector{1, 0}, lcp_ray()}) {
                    const auto trace = propagate_varying(
                        [&](double z) { return twist_dependent(n0, k, z); }, input,
                        1.0, 1e-3);
                    const double s0_in = trace.samples.front().stokes.s0;
                    for (const TraceSample& sample : trace.samples) {
                        worst_drift =
                            std::max(worst_drift, std::abs(sample.stokes.s0 - s0_in));
                    }
                }
            }
        }
    }

    const double eta = 1.3, phi = 0.7;
    const Generator2x2 n0 = eta_phi_generator(eta, phi);
    const auto trace = propagate_varying([&](double) { return n0; },
                                         PolarizationVector{1, 0}, 1.0, 1e-3);
    std::vector<double> zs;
    std::vector<Vec3> states;
    for (const TraceSample& sample : trace.samples) {
        zs.push_back(sample.z);
        states.push_back(sample.stokes.s);
    }
    const double fitted =
        oracles::fit_precession_rate(zs, states, precession_axis(n0).axis).slope;
    const double rate_err = std::abs(fitted - 2 * eta);

    report(7, "intensity conservation and precession rate",
           worst_drift <= s0_tol && rate_err <= rate_tol,
           "max s0 drift " + fmt(worst_drift) + " (tol " + fmt(s0_tol) +
               "), fitted rate error " + fmt(rate_err) + " (tol " + fmt(rate_tol) +
               ")");
}

void criterion_8_adiabatic_following() {
    const double eta = 2.0, k = 0.02;  // slow twist: k/eta = 0.01
    const double bound = 2 * k / eta;
    const Generator2x2 n0 = eta_phi_generator(eta, pi / 2);
    const PolarizationVector input{std::sqrt(0.5), std::sqrt(0.5)};

    const auto trace = propagate_varying(
        [&](double z) { return twist_dependent(n0, k, z); }, input, 10.0, 1e-3);
    double worst = 0;
    for (const TraceSample& sample : trace.samples) {
        const double azimuth = 0.5 * std::atan2(sample.stokes.s.y, sample.stokes.s.x);
        const double frame = pi / 4 + k * sample.z;
        worst = std::max(worst, std::abs(azimuth - frame));
    }
    report(8, "adiabatic following of the twisted frame", worst <= bound,
           "max azimuth deviation " + fmt(worst) + " over z in [0, 10] (bound 2k/eta = " +
               fmt(bound) + ")");
}

void criterion_9_circuit_geometry() {
    const double tol = 1e-9;
    const double gauge_tol = 1e-12;
    const PolarizationVector h{1, 0};
    const PolarizationVector d{std::sqrt(0.5), std::sqrt(0.5)};
    const PolarizationVector l{std::sqrt(0.5), Complex(0, std::sqrt(0.5))};

    const double phase = pancharatnam_phase({h, d, l});
    const double omega =
        solid_angle({to_stokes(h).unit(), to_stokes(d).unit(), to_stokes(l).unit()});
    const double phase_err = std::abs(std::abs(phase) - pi / 4);
    const double half_omega_err = std::abs(std::abs(phase) - std::abs(omega) / 2);

    const double regauged = pancharatnam_phase({std::polar(1.0, 0.37) * h,
                                                std::polar(1.0, -1.1) * d,
                                                std::polar(1.0, 2.9) * l});
    const double gauge_err = std::abs(regauged - phase);

    report(9, "circuit phase equals half the solid angle",
           phase_err <= tol && half_omega_err <= tol && gauge_err <= gauge_tol,
           "| |phase| - pi/4 | = " + fmt(phase_err) + ", | |phase| - |Omega|/2 | = " +
               fmt(half_omega_err) + " (tol " + fmt(tol) + "), gauge shift " +
               fmt(gauge_err) + " (tol " + fmt(gauge_tol) + ")");
}

void criterion_10_polarization_matrix() {
    const double tol = 1e-12;
    double worst = 0;
    for (double theta : linspace(0, pi, 20)) {
        for (double phi : linspace(0, 2 * pi, 20)) {
            const Mat2 m = polarization_matrix(theta, phi);
            worst = std::max(worst, max_abs_diff(m, adjoint(m)));
            worst = std::max(worst, std::abs(m.trace()));
            const auto pairs = eigenpairs(m);
            worst = std::max(worst, std::abs(pairs[0].value - Complex(0.5)));
            worst = std::max(worst, std::abs(pairs[1].value - Complex(-0.5)));
            const PolarizationVector psi = SpinorState(theta, phi).realize();
            worst = std::max(worst, (m * psi - Complex(0.5) * psi).norm());
        }
    }
    report(10, "polarization-matrix structure", worst <= tol,
           "max deviation over Hermiticity/trace/eigenvalues/half-spinor = " +
               fmt(worst) + " on a 20x20 grid (tol " + fmt(tol) + ")");
}

void criterion_11_cli_determinism() {
    const std::string bin = TWISTPHASE_BIN;
    const std::string golden = GOLDEN_DIR;
    auto run = [](const std::string& cmd) {
        return std::system(cmd.c_str()) == 0;
    };

    const bool ran =
        run(bin + " figure --id fig2 --out acceptance_fig2_a.csv") &&
        run(bin + " figure --id fig2 --out acceptance_fig2_b.csv") &&
        run(bin + " sweep --input eigen --mode both --sweep eta:0:2:5 "
                  "--sweep k:0:1:3 --out acceptance_net_sweep.csv");

    const std::string fig_a = read_file("acceptance_fig2_a.csv");
    const std::string fig_b = read_file("acceptance_fig2_b.csv");
    const std::string net = read_file("acceptance_net_sweep.csv");
    const std::string fig_golden = read_file(golden + "/fig2.csv");
    const std::string net_golden = read_file(golden + "/net_phase_sweep.csv");

    const bool repeat_identical = !fig_a.empty() && fig_a == fig_b;
    const bool fig_matches = fig_a == fig_golden && !fig_golden.empty();
    const bool net_matches = net == net_golden && !net_golden.empty();

    report(11, "CLI determinism and golden files",
           ran && repeat_identical && fig_matches && net_matches,
           std::string("invocations ") + (ran ? "succeeded" : "failed") +
               "; repeat run byte-identical: " + (repeat_identical ? "yes" : "no") +
               "; matches committed fig2: " + (fig_matches ? "yes" : "no") +
               "; matches committed net-phase sweep: " + (net_matches ? "yes" : "no"));
}

}  // namespace

int main() {
    criterion_1_dynamical_identity();
    criterion_2_circular_phases();
    criterion_3_normal_incidence_agreement();
    criterion_4_conformance_ledger();
    criterion_5_eigenstructure();
    criterion_6_propagation();
    criterion_7_unitarity_precession();
    criterion_8_adiabatic_following();
    criterion_9_circuit_geometry();
    criterion_10_polarization_matrix();
    criterion_11_cli_determinism();

    std::cout << (11 - failures) << "/11 criteria passed\n";
    return failures == 0 ? 0 : 1;
}

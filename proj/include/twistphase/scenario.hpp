#pragma once

#include <string>
#include <vector>

#include "twistphase/media.hpp"
#include "twistphase/phases.hpp"

// The CLI-facing layer: validated scenario configs (JSON file + flag
// overrides), parameter sweeps, named figure datasets, propagation traces
// and the conformance table, all rendered as deterministic CSV text.
namespace twistphase {

/// Bad configuration: unknown key, malformed value, unsupported combination.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem trouble: unreadable config, unwritable output.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class InputKind { eigen, lcp, rcp, linear, custom };
enum class PhaseMode { bilinear, paper, both };

/// One swept parameter: `count` evenly spaced values over [start, stop].
struct SweepRange {
    std::string param;  // eta | k | phi | theta
    double start = 0;
    double stop = 0;
    int count = 0;
};

struct ScenarioConfig {
    double eta = 0;
    double phi = 0;
    double k = 0;
    double theta = 1.5707963267948966;  // pi/2, normal incidence
    TwistMode twist_mode = TwistMode::thickness_independent;
    InputKind input = InputKind::eigen;
    double linear_angle = 0;                 // for input = linear
    PolarizationVector custom_state{1, 0};   // for input = custom
    PhaseMode mode = PhaseMode::bilinear;
    std::vector<SweepRange> sweep;
    double z = 1;         // trace length
    double step = 1e-3;   // trace integrator step
    std::string out;      // output path; empty = stdout
};

/// Parse a flat JSON key-value document into a config. Unknown keys, wrong
/// types and malformed entries raise config_error naming the offending key.
ScenarioConfig parse_config_json(const std::string& text);

/// Parse an --input selector: eigen | lcp | rcp | linear:ANGLE |
/// custom:RE1,IM1,RE2,IM2. Invalid selectors raise config_error.
void apply_input_selector(ScenarioConfig& config, const std::string& selector);

/// Parse a --sweep range "param:start:stop:count" and append it.
void apply_sweep_flag(ScenarioConfig& config, const std::string& range);

void apply_twist_mode(ScenarioConfig& config, const std::string& name);
void apply_phase_mode(ScenarioConfig& config, const std::string& name);

/// Structural validation shared by every subcommand (throws config_error):
/// sweep params drawn from {eta, k, phi, theta} with no duplicates, counts
/// >= 2, start <= stop and finite, custom state nonzero, eta >= 0.
void validate_scenario(const ScenarioConfig& config);

/// Evaluate the sweep: one CSV row per grid point in lexicographic order of
/// the sweep ranges, columns = swept params then phase_im_bilinear and/or
/// phase_im_paper. An empty sweep yields the single fixed-point row.
/// `paper`/`both` modes require an input/twist combination with a printed
/// closed form; thickness_dependent twist has no per-unit-thickness phase.
std::string run_scenario(const ScenarioConfig& config);

/// Named figure datasets fig2..fig8 on fixed 51-point axes
/// (eta, k in [0, 2]; cos phi in [-1, 1]); see README for the slices.
std::string figure_csv(const std::string& figure_id);

/// RK4 trace through the configured medium: columns z, field components
/// (Re/Im), then s1, s2, s3, s0. Uses config.z / config.step.
std::string trace_csv(const ScenarioConfig& config);

/// Closed-form conformance table over a grid taken from the sweep ranges
/// (defaults: eta 0..2 x5, k 0..2 x5, phi 0..2pi x9, theta 0..pi/2 x3).
std::string conformance_csv(const ScenarioConfig& config);

}  // namespace twistphase

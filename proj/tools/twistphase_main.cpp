// twistphase: polarized-light phase calculations for twisted birefringent
// media, emitted as deterministic CSV.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "twistphase/scenario.hpp"

namespace {

using twistphase::ScenarioConfig;

// Flag values gathered by CLI11; only flags the user actually passed
// override the config file (file first, flags second).
struct CommonFlags {
    std::string config_path;
    double eta = 0, k = 0, phi = 0, theta = 0, z = 0, step = 0;
    std::string input, mode, twist_mode, out;
    std::vector<std::string> sweeps;

    CLI::Option* eta_opt = nullptr;
    CLI::Option* k_opt = nullptr;
    CLI::Option* phi_opt = nullptr;
    CLI::Option* theta_opt = nullptr;
    CLI::Option* z_opt = nullptr;
    CLI::Option* step_opt = nullptr;
    CLI::Option* input_opt = nullptr;
    CLI::Option* mode_opt = nullptr;
    CLI::Option* twist_opt = nullptr;
    CLI::Option* out_opt = nullptr;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f, bool with_trace_flags) {
    cmd->add_option("--config", f.config_path, "JSON config file (flags override keys)");
    f.eta_opt = cmd->add_option("--eta", f.eta, "birefringence strength (>= 0)");
    f.k_opt = cmd->add_option("--k", f.k, "twist rate per unit thickness");
    f.phi_opt = cmd->add_option("--phi", f.phi, "birefringence mixing angle, radians");
    f.theta_opt = cmd->add_option("--theta", f.theta, "ray polar angle, radians");
    f.input_opt = cmd->add_option(
        "--input", f.input,
        "input state: eigen | lcp | rcp | linear:ANGLE | custom:RE1,IM1,RE2,IM2");
    f.mode_opt = cmd->add_option("--mode", f.mode,
                                 "phase columns: bilinear | paper | both");
    f.twist_opt = cmd->add_option(
        "--twist-mode", f.twist_mode,
        "none | thickness_independent | thickness_dependent");
    cmd->add_option("--sweep", f.sweeps,
                    "swept parameter as PARAM:START:STOP:COUNT (repeatable)")
        ->take_all();
    f.out_opt = cmd->add_option("--out", f.out, "output CSV path (default: stdout)");
    if (with_trace_flags) {
        f.z_opt = cmd->add_option("--z", f.z, "trace length (> 0)");
        f.step_opt = cmd->add_option("--step", f.step, "integrator step (> 0)");
    }
}

ScenarioConfig build_config(const CommonFlags& f) {
    ScenarioConfig config;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path, std::ios::binary);
        if (!in) {
            throw twistphase::io_error("config path '" + f.config_path +
                                       "': cannot open for reading");
        }
        std::ostringstream text;
        text << in.rdbuf();
        if (in.bad()) {
            throw twistphase::io_error("config path '" + f.config_path +
                                       "': read failed");
        }
        config = twistphase::parse_config_json(text.str());
    }
    if (f.eta_opt && f.eta_opt->count()) config.eta = f.eta;
    if (f.k_opt && f.k_opt->count()) config.k = f.k;
    if (f.phi_opt && f.phi_opt->count()) config.phi = f.phi;
    if (f.theta_opt && f.theta_opt->count()) config.theta = f.theta;
    if (f.z_opt && f.z_opt->count()) config.z = f.z;
    if (f.step_opt && f.step_opt->count()) config.step = f.step;
    if (f.input_opt && f.input_opt->count()) {
        twistphase::apply_input_selector(config, f.input);
    }
    if (f.mode_opt && f.mode_opt->count()) {
        twistphase::apply_phase_mode(config, f.mode);
    }
    if (f.twist_opt && f.twist_opt->count()) {
        twistphase::apply_twist_mode(config, f.twist_mode);
    }
    if (!f.sweeps.empty()) {
        config.sweep.clear();  // flag overrides the file's sweep list wholesale
        for (const std::string& range : f.sweeps) {
            twistphase::apply_sweep_flag(config, range);
        }
    }
    if (f.out_opt && f.out_opt->count()) config.out = f.out;
    return config;
}

void emit(const std::string& out_path, const std::string& csv) {
    if (out_path.empty()) {
        std::cout << csv;
        std::cout.flush();
        if (!std::cout) throw twistphase::io_error("stdout: write failed");
        return;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw twistphase::io_error("output path '" + out_path +
                                   "': cannot open for writing");
    }
    out << csv;
    out.flush();
    if (!out) {
        throw twistphase::io_error("output path '" + out_path + "': write failed");
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Polarization phases in twisted birefringent media"};
    app.require_subcommand(1);

    CommonFlags sweep_flags, trace_flags, conf_flags;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Evaluate phase bilinears over a parameter sweep");
    add_common_flags(sweep_cmd, sweep_flags, false);

    CLI::App* figure_cmd =
        app.add_subcommand("figure", "Emit a named closed-form dataset (fig2..fig8)");
    std::string figure_id, figure_out;
    figure_cmd->add_option("--id", figure_id, "figure id: fig2..fig8")->required();
    figure_cmd->add_option("--out", figure_out, "output CSV path (default: stdout)");

    CLI::App* trace_cmd =
        app.add_subcommand("trace", "Integrate a ray through the medium and record it");
    add_common_flags(trace_cmd, trace_flags, true);

    CLI::App* conf_cmd = app.add_subcommand(
        "conformance", "Tabulate bilinear phases against the printed closed forms");
    add_common_flags(conf_cmd, conf_flags, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (sweep_cmd->parsed()) {
        const ScenarioConfig config = build_config(sweep_flags);
        emit(config.out, twistphase::run_scenario(config));
    } else if (figure_cmd->parsed()) {
        emit(figure_out, twistphase::figure_csv(figure_id));
    } else if (trace_cmd->parsed()) {
        const ScenarioConfig config = build_config(trace_flags);
        emit(config.out, twistphase::trace_csv(config));
    } else if (conf_cmd->parsed()) {
        const ScenarioConfig config = build_config(conf_flags);
        emit(config.out, twistphase::conformance_csv(config));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const twistphase::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const twistphase::io_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 3;
    } catch (const twistphase::invalid_input& e) {
        std::cerr << "numerical-domain error: " << e.what() << '\n';
        return 4;
    } catch (const std::domain_error& e) {
        std::cerr << "numerical-domain error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

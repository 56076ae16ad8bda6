#include "twistphase/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"
#include "twistphase/csv.hpp"
#include "twistphase/propagation.hpp"

namespace twistphase {

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> linspace(double start, double stop, int count) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        values.push_back(count == 1 ? start
                                    : start + (stop - start) * i / (count - 1));
    }
    return values;
}

double to_number(const nlohmann::json& value, const std::string& key) {
    if (!value.is_number()) {
        throw config_error("config key '" + key + "': expected a number");
    }
    const double x = value.get<double>();
    if (!std::isfinite(x)) {
        throw config_error("config key '" + key + "': non-finite number");
    }
    return x;
}

std::string to_text(const nlohmann::json& value, const std::string& key) {
    if (!value.is_string()) {
        throw config_error("config key '" + key + "': expected a string");
    }
    return value.get<std::string>();
}

/// Whether the scenario actually twists: a twist law is selected and the
/// twist rate is nonzero somewhere on the grid.
bool twist_active(const ScenarioConfig& config) {
    if (config.twist_mode == TwistMode::none) return false;
    if (config.k != 0) return true;
    return std::any_of(config.sweep.begin(), config.sweep.end(),
                       [](const SweepRange& r) {
                           return r.param == "k" && (r.start != 0 || r.stop != 0);
                       });
}

PolarizationVector scenario_state(const ScenarioConfig& config, bool twisted) {
    switch (config.input) {
        case InputKind::eigen:
            return twisted ? twisted_ray(config.theta, config.phi)
                           : eigen_ray(config.phi);
        case InputKind::lcp: return lcp_ray();
        case InputKind::rcp: return rcp_ray();
        case InputKind::linear:
            return {std::cos(config.linear_angle), std::sin(config.linear_angle)};
        case InputKind::custom: return config.custom_state;
    }
    throw config_error("config key 'input': unknown input kind");
}

/// The printed closed form matching (input, twist), when one exists.
PhaseValue printed_phase(const ScenarioConfig& config, bool twisted) {
    ClosedFormKind kind;
    if (config.input == InputKind::eigen) {
        kind = twisted ? ClosedFormKind::net_eigen_general
                       : ClosedFormKind::dynamical_eigen;
    } else if (config.input == InputKind::lcp) {
        kind = twisted ? ClosedFormKind::net_lcp : ClosedFormKind::dynamical_lcp;
    } else if (config.input == InputKind::rcp && !twisted) {
        kind = ClosedFormKind::dynamical_rcp;
    } else {
        throw config_error(
            "config key 'mode': no printed closed form for this input/twist "
            "combination; use mode=bilinear");
    }
    return closed_form(kind, config.eta, config.phi, config.k, config.theta);
}

void set_param(ScenarioConfig& config, const std::string& name, double value) {
    if (name == "eta") config.eta = value;
    else if (name == "k") config.k = value;
    else if (name == "phi") config.phi = value;
    else if (name == "theta") config.theta = value;
    else throw config_error("sweep parameter '" + name + "' is not one of eta, k, phi, theta");
}

std::vector<double> grid_for(const ScenarioConfig& config, const std::string& name,
                             std::vector<double> fallback) {
    for (const SweepRange& r : config.sweep) {
        if (r.param == name) return linspace(r.start, r.stop, r.count);
    }
    return fallback;
}

}  // namespace

ScenarioConfig parse_config_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error(std::string("config: malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw config_error("config: top level must be a JSON object");
    }

    ScenarioConfig config;
    for (const auto& [key, value] : doc.items()) {
        if (key == "eta") config.eta = to_number(value, key);
        else if (key == "phi") config.phi = to_number(value, key);
        else if (key == "k") config.k = to_number(value, key);
        else if (key == "theta") config.theta = to_number(value, key);
        else if (key == "z") config.z = to_number(value, key);
        else if (key == "step") config.step = to_number(value, key);
        else if (key == "twist_mode") apply_twist_mode(config, to_text(value, key));
        else if (key == "input") apply_input_selector(config, to_text(value, key));
        else if (key == "mode") apply_phase_mode(config, to_text(value, key));
        else if (key == "out") config.out = to_text(value, key);
        else if (key == "sweep") {
            if (!value.is_array()) {
                throw config_error("config key 'sweep': expected an array");
            }
            for (const auto& entry : value) {
                if (!entry.is_object() || !entry.contains("param") ||
                    !entry.contains("start") || !entry.contains("stop") ||
                    !entry.contains("count")) {
                    throw config_error(
                        "config key 'sweep': each entry needs param/start/stop/count");
                }
                for (const auto& [skey, sval] : entry.items()) {
                    if (skey != "param" && skey != "start" && skey != "stop" &&
                        skey != "count") {
                        throw config_error("config key 'sweep." + skey + "': unknown key");
                    }
                    (void)sval;
                }
                SweepRange range;
                range.param = to_text(entry["param"], "sweep.param");
                range.start = to_number(entry["start"], "sweep.start");
                range.stop = to_number(entry["stop"], "sweep.stop");
                if (!entry["count"].is_number_integer()) {
                    throw config_error("config key 'sweep.count': expected an integer");
                }
                range.count = entry["count"].get<int>();
                config.sweep.push_back(range);
            }
        } else {
            throw config_error("config key '" + key + "': unknown key");
        }
    }
    return config;
}

void apply_input_selector(ScenarioConfig& config, const std::string& selector) {
    if (selector == "eigen") { config.input = InputKind::eigen; return; }
    if (selector == "lcp") { config.input = InputKind::lcp; return; }
    if (selector == "rcp") { config.input = InputKind::rcp; return; }
    if (selector.rfind("linear:", 0) == 0) {
        try {
            std::size_t used = 0;
            const std::string body = selector.substr(7);
            config.linear_angle = std::stod(body, &used);
            if (used != body.size()) throw std::invalid_argument("trailing text");
        } catch (const std::exception&) {
            throw config_error("input selector '" + selector +
                               "': expected linear:ANGLE with a numeric angle");
        }
        config.input = InputKind::linear;
        return;
    }
    if (selector.rfind("custom:", 0) == 0) {
        const std::string body = selector.substr(7);
        std::vector<std::string> pieces;
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = body.find(',', pos);
            pieces.push_back(body.substr(
                pos, comma == std::string::npos ? std::string::npos : comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        std::vector<double> parts;
        for (const std::string& piece : pieces) {
            try {
                std::size_t used = 0;
                parts.push_back(std::stod(piece, &used));
                if (used != piece.size()) throw std::invalid_argument("trailing text");
            } catch (const std::exception&) {
                throw config_error("input selector '" + selector +
                                   "': expected custom:RE1,IM1,RE2,IM2");
            }
        }
        if (parts.size() != 4) {
            throw config_error("input selector '" + selector +
                               "': expected custom:RE1,IM1,RE2,IM2");
        }
        config.custom_state = {Complex(parts[0], parts[1]), Complex(parts[2], parts[3])};
        config.input = InputKind::custom;
        return;
    }
    throw config_error("input selector '" + selector +
                       "': expected eigen, lcp, rcp, linear:ANGLE or custom:...");
}

void apply_sweep_flag(ScenarioConfig& config, const std::string& range) {
    SweepRange parsed;
    std::vector<std::string> pieces;
    std::size_t pos = 0;
    while (true) {
        const std::size_t colon = range.find(':', pos);
        pieces.push_back(range.substr(
            pos, colon == std::string::npos ? std::string::npos : colon - pos));
        if (colon == std::string::npos) break;
        pos = colon + 1;
    }
    if (pieces.size() != 4) {
        throw config_error("sweep range '" + range +
                           "': expected PARAM:START:STOP:COUNT");
    }
    parsed.param = pieces[0];
    try {
        parsed.start = std::stod(pieces[1]);
        parsed.stop = std::stod(pieces[2]);
        parsed.count = std::stoi(pieces[3]);
    } catch (const std::exception&) {
        throw config_error("sweep range '" + range +
                           "': expected numeric START:STOP:COUNT");
    }
    config.sweep.push_back(parsed);
}

void apply_twist_mode(ScenarioConfig& config, const std::string& name) {
    if (name == "none") config.twist_mode = TwistMode::none;
    else if (name == "thickness_independent")
        config.twist_mode = TwistMode::thickness_independent;
    else if (name == "thickness_dependent")
        config.twist_mode = TwistMode::thickness_dependent;
    else
        throw config_error("config key 'twist_mode': expected none, "
                           "thickness_independent or thickness_dependent");
}

void apply_phase_mode(ScenarioConfig& config, const std::string& name) {
    if (name == "bilinear") config.mode = PhaseMode::bilinear;
    else if (name == "paper") config.mode = PhaseMode::paper;
    else if (name == "both") config.mode = PhaseMode::both;
    else throw config_error("config key 'mode': expected bilinear, paper or both");
}

void validate_scenario(const ScenarioConfig& config) {
    static const std::vector<std::string> params = {"eta", "k", "phi", "theta"};
    for (const SweepRange& r : config.sweep) {
        if (std::find(params.begin(), params.end(), r.param) == params.end()) {
            throw config_error("sweep parameter '" + r.param +
                               "' is not one of eta, k, phi, theta");
        }
        if (r.count < 2) {
            throw config_error("sweep parameter '" + r.param +
                               "': count must be >= 2");
        }
        if (!(r.start <= r.stop)) {
            throw config_error("sweep parameter '" + r.param +
                               "': start must be <= stop");
        }
        if (!std::isfinite(r.start) || !std::isfinite(r.stop)) {
            throw config_error("sweep parameter '" + r.param +
                               "': non-finite bounds");
        }
    }
    for (std::size_t i = 0; i < config.sweep.size(); ++i) {
        for (std::size_t j = i + 1; j < config.sweep.size(); ++j) {
            if (config.sweep[i].param == config.sweep[j].param) {
                throw config_error("sweep parameter '" + config.sweep[i].param +
                                   "' appears twice");
            }
        }
    }
    if (config.input == InputKind::custom && config.custom_state.norm_sq() < 1e-300) {
        throw config_error("config key 'input': custom state must be nonzero");
    }
    if (config.eta < 0) {
        throw config_error("config key 'eta': must be >= 0");
    }
    for (const SweepRange& r : config.sweep) {
        if (r.param == "eta" && r.start < 0) {
            throw config_error("sweep parameter 'eta': must stay >= 0");
        }
    }
}

std::string run_scenario(const ScenarioConfig& config) {
    validate_scenario(config);
    if (config.twist_mode == TwistMode::thickness_dependent) {
        throw config_error(
            "config key 'twist_mode': thickness_dependent has no per-unit-"
            "thickness phase; use the trace command");
    }
    const bool twisted = twist_active(config);
    if (config.mode != PhaseMode::bilinear) {
        // Probe: printed_phase throws for combinations without a closed form.
        printed_phase(config, twisted);
    }

    std::vector<std::string> header;
    for (const SweepRange& r : config.sweep) header.push_back(r.param);
    if (config.mode != PhaseMode::paper) header.push_back("phase_im_bilinear");
    if (config.mode != PhaseMode::bilinear) header.push_back("phase_im_paper");
    CsvBuilder csv(header);

    std::vector<std::vector<double>> grids;
    for (const SweepRange& r : config.sweep) {
        grids.push_back(linspace(r.start, r.stop, r.count));
    }

    std::vector<std::size_t> index(config.sweep.size(), 0);
    while (true) {
        ScenarioConfig point = config;
        std::vector<double> row;
        for (std::size_t d = 0; d < grids.size(); ++d) {
            set_param(point, config.sweep[d].param, grids[d][index[d]]);
            row.push_back(grids[d][index[d]]);
        }

        const Generator2x2 n0 = eta_phi_generator(point.eta, point.phi);
        const Generator2x2 gen = twisted ? twist_independent(n0, point.k) : n0;
        if (config.mode != PhaseMode::paper) {
            row.push_back(bilinear_phase(scenario_state(point, twisted), gen).imag());
        }
        if (config.mode != PhaseMode::bilinear) {
            row.push_back(printed_phase(point, twisted).imag());
        }
        csv.add_numeric_row(row);

        // Odometer increment, last dimension fastest (lexicographic order).
        std::size_t d = grids.size();
        while (d > 0) {
            --d;
            if (++index[d] < grids[d].size()) break;
            index[d] = 0;
            if (d == 0) return csv.str();
        }
        if (grids.empty()) return csv.str();
    }
}

std::string figure_csv(const std::string& figure_id) {
    const std::vector<double> eta_axis = linspace(0, 2, 51);
    const std::vector<double> k_axis = linspace(0, 2, 51);
    const std::vector<double> cos_axis = linspace(-1, 1, 51);

    auto surface = [&](const std::vector<std::string>& header,
                       const std::vector<double>& xs, const std::vector<double>& ys,
                       auto value) {
        CsvBuilder csv(header);
        for (double x : xs) {
            for (double y : ys) csv.add_numeric_row({x, y, value(x, y)});
        }
        return csv.str();
    };

    if (figure_id == "fig2") {
        CsvBuilder csv({"eta", "gamma_im"});
        for (double eta : eta_axis) {
            csv.add_numeric_row(
                {eta, closed_form(ClosedFormKind::dynamical_eigen, eta, 0, 0, pi / 2)
                          .imag()});
        }
        return csv.str();
    }
    if (figure_id == "fig3") {
        return surface({"eta", "k", "net_phase_im"}, eta_axis, k_axis,
                       [](double eta, double k) {
                           return closed_form(ClosedFormKind::net_eigen_normal, eta,
                                              0, k, pi / 2)
                               .imag();
                       });
    }
    if (figure_id == "fig4") {
        return surface({"k", "cos_phi", "net_phase_im"}, k_axis, cos_axis,
                       [](double k, double c) {
                           return closed_form(ClosedFormKind::net_eigen_normal, 1,
                                              std::acos(c), k, pi / 2)
                               .imag();
                       });
    }
    if (figure_id == "fig5") {
        return surface({"eta", "k", "geom_phase_im"}, eta_axis, k_axis,
                       [](double eta, double k) {
                           return closed_form(ClosedFormKind::geom_eigen_normal, eta,
                                              pi / 3, k, pi / 2)
                               .imag();
                       });
    }
    if (figure_id == "fig6") {
        return surface({"cos_phi", "k", "geom_phase_im"}, cos_axis, k_axis,
                       [](double c, double k) {
                           return closed_form(ClosedFormKind::geom_eigen_normal, 1,
                                              std::acos(c), k, pi / 2)
                               .imag();
                       });
    }
    if (figure_id == "fig7") {
        return surface({"cos_phi", "k", "pole_geom_phase_im"}, cos_axis, k_axis,
                       [](double c, double k) {
                           return closed_form(ClosedFormKind::geom_eigen_pole, 1,
                                              std::acos(c), k, 0)
                               .imag();
                       });
    }
    if (figure_id == "fig8") {
        return surface({"eta", "k", "pole_geom_phase_im"}, eta_axis, k_axis,
                       [](double eta, double k) {
                           return closed_form(ClosedFormKind::geom_eigen_pole, eta, 0,
                                              k, 0)
                               .imag();
                       });
    }
    throw config_error("figure id '" + figure_id + "': expected fig2..fig8");
}

std::string trace_csv(const ScenarioConfig& config) {
    validate_scenario(config);
    if (!(config.z > 0)) {
        throw config_error("config key 'z': trace length must be > 0");
    }
    const MediumSpec medium = MediumSpec::from_eta_phi(config.eta, config.phi,
                                                       config.k, config.twist_mode);
    const PolarizationVector input = scenario_state(config, false);
    const PropagationTrace trace = propagate_varying(
        [&](double z) { return medium.local_generator(z); }, input, config.z,
        config.step);

    CsvBuilder csv({"z", "e1_re", "e1_im", "e2_re", "e2_im", "s1", "s2", "s3", "s0"});
    for (const TraceSample& sample : trace.samples) {
        csv.add_numeric_row({sample.z, sample.state.e1.real(), sample.state.e1.imag(),
                             sample.state.e2.real(), sample.state.e2.imag(),
                             sample.stokes.s.x, sample.stokes.s.y, sample.stokes.s.z,
                             sample.stokes.s0});
    }
    return csv.str();
}

std::string conformance_csv(const ScenarioConfig& config) {
    validate_scenario(config);
    if (config.twist_mode == TwistMode::thickness_dependent) {
        throw config_error(
            "config key 'twist_mode': thickness_dependent has no per-unit-"
            "thickness closed forms; use the trace command");
    }
    ConformanceGrid grid;
    grid.eta = grid_for(config, "eta", linspace(0, 2, 5));
    grid.k = grid_for(config, "k", linspace(0, 2, 5));
    grid.phi = grid_for(config, "phi", linspace(0, 2 * pi, 9));
    grid.theta = grid_for(config, "theta", linspace(0, pi / 2, 3));

    CsvBuilder csv({"eta", "k", "phi", "theta", "kind", "bilinear_im", "printed_im",
                    "abs_diff", "flagged"});
    for (const ConformanceRow& row : conformance_report(grid)) {
        csv.add_row({format_double(row.eta), format_double(row.k),
                     format_double(row.phi), format_double(row.theta),
                     to_string(row.kind), format_double(row.bilinear_im),
                     format_double(row.printed_im), format_double(row.abs_diff),
                     row.flagged ? "1" : "0"});
    }
    return csv.str();
}

}  // namespace twistphase

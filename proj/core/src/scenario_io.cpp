#include "hstlab/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "hstlab/csv.hpp"
#include "hstlab/errors.hpp"

namespace hstlab {

namespace {

using nlohmann::json;

constexpr double k_speed_of_light_mps = 299792458.0;

void require_object(const json& node, const std::string& context) {
    if (!node.is_object()) {
        throw invalid_parameter_error(context + " must be a JSON object");
    }
}

void reject_unknown_keys(const json& node, const std::string& context,
                         std::initializer_list<const char*> allowed) {
    for (const auto& item : node.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw invalid_parameter_error("unknown key '" + item.key() + "' in " +
                                          context);
        }
    }
}

double require_number(const json& node, const std::string& context,
                      const char* key) {
    if (!node.contains(key)) {
        throw invalid_parameter_error(context + " is missing '" + key + "'");
    }
    const json& value = node.at(key);
    if (!value.is_number()) {
        throw invalid_parameter_error("'" + std::string(key) + "' in " + context +
                                      " must be a number");
    }
    return value.get<double>();
}

std::string require_string(const json& node, const std::string& context,
                           const char* key) {
    if (!node.contains(key) || !node.at(key).is_string()) {
        throw invalid_parameter_error(context + " needs a string '" + key + "'");
    }
    return node.at(key).get<std::string>();
}

int require_count(const json& node, const std::string& context, const char* key) {
    const double value = require_number(node, context, key);
    if (value != std::floor(value) || value < 1.0 || value > 1e9) {
        throw invalid_parameter_error("'" + std::string(key) + "' in " + context +
                                      " must be a positive integer");
    }
    return static_cast<int>(value);
}

json parse_text(const std::string& text, const std::string& context) {
    json root = json::parse(text, nullptr, false);
    if (root.is_discarded()) {
        throw invalid_parameter_error(context + " is not valid JSON");
    }
    return root;
}

Deployment parse_deployment(const json& node, const Scenario& scenario) {
    require_object(node, "deployment");
    const std::string strategy_name = require_string(node, "deployment", "strategy");
    const Strategy strategy = strategy_from_string(strategy_name);

    switch (strategy) {
        case Strategy::equidistant: {
            reject_unknown_keys(node, "deployment", {"strategy", "n"});
            return make_equidistant(scenario,
                                    require_count(node, "deployment", "n"));
        }
        case Strategy::fixed_interval: {
            reject_unknown_keys(node, "deployment", {"strategy", "n", "delta_m"});
            const int count = require_count(node, "deployment", "n");
            const double delta = require_number(node, "deployment", "delta_m");
            return make_fixed_interval(scenario, count, delta);
        }
        case Strategy::explicit_offsets: {
            reject_unknown_keys(node, "deployment", {"strategy", "n", "offsets_m"});
            if (!node.contains("offsets_m") || !node.at("offsets_m").is_array()) {
                throw invalid_parameter_error(
                    "explicit deployment needs an 'offsets_m' array");
            }
            std::vector<double> offsets;
            for (const auto& value : node.at("offsets_m")) {
                if (!value.is_number()) {
                    throw invalid_parameter_error("'offsets_m' must contain numbers");
                }
                offsets.push_back(value.get<double>());
            }
            if (node.contains("n") &&
                node.at("n").get<double>() != static_cast<double>(offsets.size())) {
                throw invalid_parameter_error(
                    "'n' disagrees with the length of 'offsets_m'");
            }
            return make_explicit(scenario, std::move(offsets));
        }
    }
    throw invalid_parameter_error("unknown deployment strategy");
}

}  // namespace

ScenarioFile parse_scenario_json(const std::string& text) {
    const json root = parse_text(text, "scenario file");
    require_object(root, "scenario file");
    reject_unknown_keys(root, "scenario file",
                        {"speed_mps", "train_length_m", "d0_m", "coverage_D_m",
                         "carrier_freq_hz", "wavelength_m", "antenna_gain",
                         "calibration", "c_th_bits", "deployment"});

    ScenarioFile file;
    Scenario& s = file.scenario;
    s.speed_mps = require_number(root, "scenario file", "speed_mps");
    s.train_length_m = require_number(root, "scenario file", "train_length_m");
    s.min_distance_m = require_number(root, "scenario file", "d0_m");
    s.coverage_m = require_number(root, "scenario file", "coverage_D_m");

    const bool has_freq = root.contains("carrier_freq_hz");
    const bool has_wavelength = root.contains("wavelength_m");
    if (has_freq == has_wavelength) {
        throw invalid_parameter_error(
            "scenario file needs exactly one of 'carrier_freq_hz' and 'wavelength_m'");
    }
    if (has_wavelength) {
        s.wavelength_m = require_number(root, "scenario file", "wavelength_m");
    } else {
        const double freq = require_number(root, "scenario file", "carrier_freq_hz");
        if (!(freq > 0.0)) {
            throw invalid_parameter_error("'carrier_freq_hz' must be positive");
        }
        s.wavelength_m = k_speed_of_light_mps / freq;
    }

    s.antenna_gain =
        root.contains("antenna_gain")
            ? require_number(root, "scenario file", "antenna_gain")
            : 1.0;
    s.rate_threshold_bits = require_number(root, "scenario file", "c_th_bits");

    if (!root.contains("calibration")) {
        throw invalid_parameter_error("scenario file is missing 'calibration'");
    }
    const json& calibration = root.at("calibration");
    require_object(calibration, "calibration");
    const std::string mode = require_string(calibration, "calibration", "mode");
    if (mode == "max_snr") {
        reject_unknown_keys(calibration, "calibration", {"mode", "max_snr_db"});
        s.snr0 = calibrate_from_max_snr(
            require_number(calibration, "calibration", "max_snr_db"),
            s.min_distance_m);
    } else if (mode == "physics") {
        reject_unknown_keys(calibration, "calibration",
                            {"mode", "tx_power_w", "noise_density_w_per_hz",
                             "bandwidth_hz"});
        s.snr0 = calibrate_from_physics(
            require_number(calibration, "calibration", "tx_power_w"),
            s.antenna_gain, s.wavelength_m,
            require_number(calibration, "calibration", "noise_density_w_per_hz"),
            require_number(calibration, "calibration", "bandwidth_hz"));
    } else {
        throw invalid_parameter_error("calibration mode must be 'max_snr' or 'physics'");
    }

    s.validate();

    if (root.contains("deployment")) {
        file.deployment = parse_deployment(root.at("deployment"), s);
    }
    return file;
}

ScenarioFile load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw invalid_parameter_error("cannot open scenario file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_json(buffer.str());
}

SweepSpec parse_sweep_spec_json(const std::string& text) {
    const json root = parse_text(text, "sweep spec");
    require_object(root, "sweep spec");
    reject_unknown_keys(root, "sweep spec",
                        {"variable", "values", "strategies", "outputs", "n",
                         "delta_m", "cth_bits", "rel_tol", "scan_step_s",
                         "refine_tol_s"});

    SweepSpec spec;
    spec.variable =
        sweep_variable_from_string(require_string(root, "sweep spec", "variable"));

    if (!root.contains("values") || !root.at("values").is_array() ||
        root.at("values").empty()) {
        throw invalid_parameter_error("sweep spec needs a non-empty 'values' array");
    }
    for (const auto& value : root.at("values")) {
        if (!value.is_number()) {
            throw invalid_parameter_error("'values' must contain numbers");
        }
        spec.values.push_back(value.get<double>());
    }

    if (!root.contains("strategies") || !root.at("strategies").is_array() ||
        root.at("strategies").empty()) {
        throw invalid_parameter_error(
            "sweep spec needs a non-empty 'strategies' array");
    }
    spec.strategies.clear();
    for (const auto& name : root.at("strategies")) {
        if (!name.is_string()) {
            throw invalid_parameter_error("'strategies' must contain strings");
        }
        spec.strategies.push_back(strategy_from_string(name.get<std::string>()));
    }

    if (!root.contains("outputs") || !root.at("outputs").is_array() ||
        root.at("outputs").empty()) {
        throw invalid_parameter_error("sweep spec needs a non-empty 'outputs' array");
    }
    spec.want_service = false;
    spec.want_otr = false;
    for (const auto& name : root.at("outputs")) {
        const std::string output = name.is_string() ? name.get<std::string>() : "";
        if (output == "service") {
            spec.want_service = true;
        } else if (output == "otr") {
            spec.want_otr = true;
        } else if (output == "trace") {
            throw invalid_parameter_error(
                "trace outputs are produced by the figure presets, not sweeps");
        } else {
            throw invalid_parameter_error("unknown sweep output '" + output + "'");
        }
    }

    if (root.contains("n")) {
        spec.antenna_count = require_count(root, "sweep spec", "n");
    }
    if (root.contains("delta_m")) {
        spec.delta_m = require_number(root, "sweep spec", "delta_m");
    }
    if (root.contains("cth_bits")) {
        spec.cth_bits = require_number(root, "sweep spec", "cth_bits");
    }
    if (root.contains("rel_tol")) {
        spec.service_rel_tol = require_number(root, "sweep spec", "rel_tol");
    }
    if (root.contains("scan_step_s")) {
        spec.scan_step_s = require_number(root, "sweep spec", "scan_step_s");
    }
    if (root.contains("refine_tol_s")) {
        spec.refine_tol_s = require_number(root, "sweep spec", "refine_tol_s");
    }
    return spec;
}

SweepSpec load_sweep_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw invalid_parameter_error("cannot open sweep spec file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_sweep_spec_json(buffer.str());
}

uint64_t fnv1a64(std::string_view bytes) {
    uint64_t hash = 14695981039346656037ull;
    for (unsigned char byte : bytes) {
        hash ^= byte;
        hash *= 1099511628211ull;
    }
    return hash;
}

uint64_t scenario_fingerprint(const Scenario& scenario) {
    std::string blob;
    for (double value :
         {scenario.speed_mps, scenario.train_length_m, scenario.min_distance_m,
          scenario.coverage_m, scenario.wavelength_m, scenario.antenna_gain,
          scenario.snr0, scenario.rate_threshold_bits}) {
        blob += format_double(value);
        blob += ';';
    }
    return fnv1a64(blob);
}

namespace {

json json_or_null(double value) {
    if (std::isnan(value)) return nullptr;
    return value;
}

}  // namespace

std::string validate_report_json(const AnalyticReport& report,
                                 std::span<const ServiceSlopeSample> slope_profile,
                                 std::span<const PairDistances> pair_distances,
                                 const NMaxInfo& n_max_info) {
    json root;
    root["separation_m"] = report.separation_m;
    root["cth_bits"] = report.cth_bits;
    root["beta"] = report.beta;
    root["beta_e_variant"] = report.beta_natural;

    json critical;
    critical["numeric_s"] = report.critical.numeric_s;
    json closed = json::array();
    for (size_t i = 0; i < report.critical.closed_form_s.size(); ++i) {
        closed.push_back(report.critical.closed_form_real[i]
                             ? json(report.critical.closed_form_s[i])
                             : json(nullptr));
    }
    critical["closed_form_s"] = closed;
    critical["max_abs_deviation_s"] = json_or_null(report.critical_max_abs_dev_s);
    root["critical_points"] = critical;

    json crossings;
    json closed_crossings = json::array();
    for (const auto& crossing : report.crossings) {
        closed_crossings.push_back(
            {{"t_s", crossing.time_s}, {"residual_bits", crossing.residual_bits}});
    }
    crossings["closed_form"] = closed_crossings;
    crossings["numeric_s"] = report.numeric_crossings_s;
    crossings["max_abs_deviation_s"] = json_or_null(report.crossing_max_abs_dev_s);
    crossings["max_residual_bits"] = report.crossing_max_residual_bits;
    root["crossings"] = crossings;

    json otr;
    otr["closed_form"] = json_or_null(report.otr_closed);
    otr["closed_form_e_variant"] = json_or_null(report.otr_closed_natural);
    otr["numeric"] = report.otr_numeric;
    otr["abs_dev"] = json_or_null(report.otr_abs_dev);
    otr["in_regime"] = report.otr_closed_in_regime;
    root["otr"] = otr;

    json slope = json::array();
    for (const auto& sample : slope_profile) {
        slope.push_back({{"train_length_m", sample.train_length_m},
                         {"slope", sample.slope},
                         {"sign", sample.sign}});
    }
    root["lemma1"] = slope;

    json groups = json::array();
    for (const auto& group : pair_distances) {
        groups.push_back({{"group", group.group_index},
                          {"equidistant_m", group.equidistant_m},
                          {"fixed_interval_m", group.fixed_interval_m}});
    }
    root["lemma3"] = groups;

    root["n_max"] = {{"delta_m", n_max_info.delta_m},
                     {"floor_plus_one", n_max_info.floor_plus_one},
                     {"floor_only", n_max_info.floor_only}};

    return root.dump(2) + "\n";
}

}  // namespace hstlab

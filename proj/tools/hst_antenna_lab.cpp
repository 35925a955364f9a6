#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hstlab/analytic.hpp"
#include "hstlab/channel.hpp"
#include "hstlab/csv.hpp"
#include "hstlab/deployment.hpp"
#include "hstlab/errors.hpp"
#include "hstlab/metrics.hpp"
#include "hstlab/scenario.hpp"
#include "hstlab/scenario_io.hpp"
#include "hstlab/sweep.hpp"
#include "hstlab/version.hpp"

namespace {

using namespace hstlab;

constexpr int k_exit_ok = 0;
constexpr int k_exit_invalid_input = 2;
constexpr int k_exit_constraint = 3;
constexpr int k_exit_convergence = 4;

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw invalid_parameter_error("cannot open output file '" + path + "'");
    }
    return out;
}

const Deployment& require_deployment(const ScenarioFile& file) {
    if (!file.deployment) {
        throw invalid_parameter_error(
            "this command needs a 'deployment' section in the scenario file");
    }
    return *file.deployment;
}

void run_trace(const std::string& scenario_path, const std::string& out_path,
               double step_s, bool per_antenna) {
    const ScenarioFile file = load_scenario_file(scenario_path);
    const Deployment& deployment = require_deployment(file);
    if (step_s <= 0.0) step_s = default_scan_step_s(file.scenario);
    const CapacityTrace trace = sample_trace(file.scenario, deployment, step_s);
    auto out = open_output(out_path);
    write_trace_csv(out, trace, per_antenna ? &file.scenario : nullptr,
                    per_antenna ? &deployment : nullptr);
}

void run_service(const std::string& scenario_path, double rel_tol) {
    const ScenarioFile file = load_scenario_file(scenario_path);
    const Deployment& deployment = require_deployment(file);
    std::cout << format_double(service_amount(file.scenario, deployment, rel_tol))
              << '\n';
}

void run_otr(const std::string& scenario_path, double cth_bits, double scan_step_s,
             double refine_tol_s, const std::string& out_path) {
    const ScenarioFile file = load_scenario_file(scenario_path);
    const Deployment& deployment = require_deployment(file);
    const OutageReport report = outage_report(file.scenario, deployment, cth_bits,
                                              scan_step_s, refine_tol_s);
    if (!out_path.empty()) {
        auto out = open_output(out_path);
        write_outage_csv(out, report);
    }
    std::cout << format_double(report.otr) << '\n';
}

void run_sweep_command(const std::string& scenario_path, const std::string& spec_path,
                       const std::string& out_path, bool reproducible) {
    const ScenarioFile file = load_scenario_file(scenario_path);
    const SweepSpec spec = load_sweep_spec_file(spec_path);
    const SweepResult result = run_sweep(file.scenario, spec);
    auto out = open_output(out_path);
    write_sweep_csv(out, result,
                    {k_version, scenario_fingerprint(file.scenario), reproducible});
}

// One CSV per curve: per-strategy sweep files, or one trace file per
// (strategy, antenna count) pair for the trace figures.
void run_figure(const std::string& id_name, const std::string& out_dir,
                bool reproducible) {
    const FigurePreset preset = figure_preset(figure_id_from_string(id_name));
    std::filesystem::create_directories(out_dir);
    const uint64_t fingerprint = scenario_fingerprint(preset.scenario);

    if (preset.sweep) {
        const SweepResult result = run_sweep(preset.scenario, *preset.sweep);
        for (Strategy strategy : preset.sweep->strategies) {
            SweepResult curve;
            curve.spec = result.spec;
            curve.spec.strategies = {strategy};
            const std::string tag = ", strategy=" + to_string(strategy) + ":";
            for (const auto& row : result.rows) {
                if (row.strategy == strategy) curve.rows.push_back(row);
            }
            for (const auto& reason : result.skipped) {
                if (reason.find(tag) != std::string::npos) {
                    curve.skipped.push_back(reason);
                }
            }
            const std::string path = out_dir + "/" + to_string(preset.id) + "_" +
                                     to_string(strategy) + ".csv";
            auto out = open_output(path);
            write_sweep_csv(out, curve, {k_version, fingerprint, reproducible});
        }
    }
    for (const auto& job : preset.traces) {
        const CapacityTrace trace =
            sample_trace(preset.scenario, job.deployment, job.sample_step_s);
        auto out = open_output(out_dir + "/" + job.label + ".csv");
        write_trace_csv(out, trace);
    }
}

void run_validate(const std::string& scenario_path, double separation_m,
                  double cth_bits, const std::string& out_path) {
    const ScenarioFile file = load_scenario_file(scenario_path);
    const Scenario& scenario = file.scenario;

    const AnalyticReport report = analyze_n2(scenario, separation_m, cth_bits);

    // Slope of the service amount vs the two-antenna separation, sampled
    // from 10 m out to three coverage spans.
    std::vector<double> lengths;
    const int points = 25;
    const double lo = 10.0;
    const double hi = 3.0 * scenario.coverage_m;
    for (int i = 0; i < points; ++i) {
        lengths.push_back(lo + (hi - lo) * i / (points - 1));
    }
    const auto slope_profile = service_slope_profile(scenario, lengths);

    int group_count = 4;
    double group_delta = 1.0;
    if (file.deployment && file.deployment->strategy == Strategy::fixed_interval) {
        group_count = file.deployment->antenna_count;
        group_delta = file.deployment->delta_m;
    }
    group_delta = std::min(group_delta, scenario.train_length_m / (group_count - 1));
    const auto pairs =
        group_pair_distances(group_count, scenario.train_length_m, group_delta);

    NMaxInfo info;
    info.delta_m = scenario.half_wavelength_m();
    info.floor_plus_one = n_max(scenario.train_length_m, info.delta_m);
    info.floor_only = info.floor_plus_one - 1;

    const std::string text = validate_report_json(report, slope_profile, pairs, info);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        auto out = open_output(out_path);
        out << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for on-train antenna placement on a "
                 "trackside base-station downlink"};
    app.set_version_flag("--version", std::string("hst-antenna-lab ") + k_version);
    app.require_subcommand(1);

    std::string scenario_path;
    std::string spec_path;
    std::string out_path;
    std::string figure_id;
    double step_s = 0.0;
    double rel_tol = k_default_service_rel_tol;
    double cth_bits = 0.0;
    double scan_step_s = 0.0;
    double refine_tol_s = 0.0;
    double separation_m = 0.0;
    bool per_antenna = false;
    bool reproducible = false;

    auto* trace = app.add_subcommand("trace", "Sample the capacity over the window");
    trace->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    trace->add_option("--out", out_path, "Output CSV file")->required();
    trace->add_option("--step", step_s, "Sample step in seconds (default: window/12000)");
    trace->add_flag("--per-antenna", per_antenna, "Add per-antenna SNR columns");

    auto* service = app.add_subcommand("service", "Integrate the capacity over the window");
    service->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    service->add_option("--rel-tol", rel_tol, "Quadrature relative tolerance");

    auto* otr = app.add_subcommand("otr", "Outage time ratio for a rate threshold");
    otr->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    otr->add_option("--cth", cth_bits, "Rate threshold in bits/s/Hz")->required();
    otr->add_option("--scan-step", scan_step_s, "Scan step in seconds");
    otr->add_option("--refine-tol", refine_tol_s, "Crossing refinement tolerance");
    otr->add_option("--out", out_path, "Optional outage-interval CSV file");

    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep from a spec file");
    sweep->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    sweep->add_option("--spec", spec_path, "Sweep spec JSON file")->required();
    sweep->add_option("--out", out_path, "Output CSV file")->required();
    sweep->add_flag("--reproducible", reproducible, "Suppress the timestamp comment");

    auto* figure = app.add_subcommand("figure", "Write the canned experiment CSVs");
    figure->add_option("--id", figure_id, "fig3..fig9")->required();
    figure->add_option("--out", out_path, "Output directory")->required();
    figure->add_flag("--reproducible", reproducible, "Suppress the timestamp comment");

    auto* validate = app.add_subcommand("validate",
                                        "Cross-check the two-antenna closed forms");
    validate->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    validate->add_option("--separation", separation_m, "Antenna separation in meters")
        ->required();
    validate->add_option("--cth", cth_bits, "Rate threshold in bits/s/Hz")->required();
    validate->add_option("--out", out_path, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
        if (trace->parsed()) {
            run_trace(scenario_path, out_path, step_s, per_antenna);
        } else if (service->parsed()) {
            run_service(scenario_path, rel_tol);
        } else if (otr->parsed()) {
            run_otr(scenario_path, cth_bits, scan_step_s, refine_tol_s, out_path);
        } else if (sweep->parsed()) {
            run_sweep_command(scenario_path, spec_path, out_path, reproducible);
        } else if (figure->parsed()) {
            run_figure(figure_id, out_path, reproducible);
        } else if (validate->parsed()) {
            run_validate(scenario_path, separation_m, cth_bits, out_path);
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? k_exit_ok : k_exit_invalid_input;
    } catch (const spacing_violation_error& e) {
        std::cerr << "constraint violation: " << e.what() << '\n';
        return k_exit_constraint;
    } catch (const regime_error& e) {
        std::cerr << "regime violation: " << e.what() << '\n';
        return k_exit_constraint;
    } catch (const convergence_error& e) {
        std::cerr << "convergence failure: " << e.what()
                  << " (last estimates " << format_double(e.last_estimate) << ", "
                  << format_double(e.previous_estimate) << ")\n";
        return k_exit_convergence;
    } catch (const hstlab::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return k_exit_invalid_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return k_exit_invalid_input;
    }
    return k_exit_ok;
}

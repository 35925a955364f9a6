#include "hstlab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <variant>

#include "hstlab/channel.hpp"
#include "hstlab/errors.hpp"

namespace hstlab {

namespace {

constexpr double k_nan = std::numeric_limits<double>::quiet_NaN();

std::string describe(double value, Strategy strategy) {
    return "x=" + std::to_string(value) + ", strategy=" + to_string(strategy);
}

int integral_count(double value) {
    const double rounded = std::round(value);
    if (!std::isfinite(value) || std::abs(value - rounded) > 1e-9 || rounded < 1.0) {
        throw invalid_parameter_error("antenna count must be a positive integer, got " +
                                      std::to_string(value));
    }
    return static_cast<int>(rounded);
}

// Resolves one (value, strategy) combination into antenna offsets, or throws
// the constraint error that makes it skippable.
std::vector<double> resolve_offsets(const Scenario& scenario, const SweepSpec& spec,
                                    double value, Strategy strategy) {
    const double min_spacing = scenario.half_wavelength_m();
    switch (spec.variable) {
        case SweepVariable::antenna_separation: {
            // Two-antenna layout {0, s}: only the equidistant arm is
            // meaningful, realized as explicit placement since the
            // equidistant rule pins the two-antenna separation to L.
            if (strategy != Strategy::equidistant) {
                throw invalid_parameter_error(
                    "separation sweeps apply to the two-antenna equidistant layout");
            }
            std::vector<double> offsets = {0.0, value};
            validate_offsets(offsets, scenario.train_length_m, min_spacing);
            return offsets;
        }
        case SweepVariable::train_length: {
            if (strategy != Strategy::equidistant) {
                throw invalid_parameter_error(
                    "train-length sweeps apply to the equidistant layout");
            }
            return equidistant_offsets(spec.antenna_count, value, min_spacing);
        }
        case SweepVariable::antenna_count: {
            const int count = integral_count(value);
            if (strategy == Strategy::equidistant) {
                return equidistant_offsets(count, scenario.train_length_m, min_spacing);
            }
            return fixed_interval_offsets(count, spec.delta_m,
                                          scenario.train_length_m, min_spacing);
        }
        case SweepVariable::delta: {
            if (strategy != Strategy::fixed_interval) {
                throw invalid_parameter_error(
                    "delta sweeps apply to the fixed-interval layout");
            }
            return fixed_interval_offsets(spec.antenna_count, value,
                                          scenario.train_length_m, min_spacing);
        }
    }
    throw invalid_parameter_error("unknown sweep variable");
}

void validate_spec(const SweepSpec& spec) {
    if (spec.values.empty()) {
        throw invalid_parameter_error("sweep needs at least one value");
    }
    for (size_t i = 0; i + 1 < spec.values.size(); ++i) {
        if (!(spec.values[i] < spec.values[i + 1])) {
            throw invalid_parameter_error("sweep values must be strictly increasing");
        }
    }
    if (spec.strategies.empty()) {
        throw invalid_parameter_error("sweep needs at least one strategy");
    }
    for (Strategy s : spec.strategies) {
        if (s == Strategy::explicit_offsets) {
            throw invalid_parameter_error(
                "sweeps accept the equidistant and fixed_interval strategies");
        }
    }
    if (!spec.want_service && !spec.want_otr) {
        throw invalid_parameter_error("sweep requests no outputs");
    }
}

}  // namespace

std::string to_string(SweepVariable variable) {
    switch (variable) {
        case SweepVariable::antenna_separation: return "antenna_separation";
        case SweepVariable::train_length: return "train_length";
        case SweepVariable::antenna_count: return "antenna_count";
        case SweepVariable::delta: return "delta";
    }
    return "unknown";
}

SweepVariable sweep_variable_from_string(const std::string& name) {
    if (name == "antenna_separation") return SweepVariable::antenna_separation;
    if (name == "train_length") return SweepVariable::train_length;
    if (name == "antenna_count") return SweepVariable::antenna_count;
    if (name == "delta") return SweepVariable::delta;
    throw invalid_parameter_error("unknown sweep variable '" + name + "'");
}

SweepResult run_sweep(const Scenario& scenario, const SweepSpec& spec) {
    scenario.validate();
    validate_spec(spec);

    SweepResult result;
    result.spec = spec;
    if (result.spec.cth_bits < 0.0) {
        result.spec.cth_bits = scenario.rate_threshold_bits;
    }
    if (result.spec.scan_step_s <= 0.0) {
        result.spec.scan_step_s = default_scan_step_s(scenario);
    }
    if (result.spec.refine_tol_s <= 0.0) {
        result.spec.refine_tol_s =
            std::min(k_default_refine_tol_s, result.spec.scan_step_s / 100.0);
    }
    const SweepSpec& resolved = result.spec;

    struct Job {
        double value;
        Strategy strategy;
    };
    std::vector<Job> jobs;
    jobs.reserve(resolved.values.size() * resolved.strategies.size());
    for (double value : resolved.values) {
        for (Strategy strategy : resolved.strategies) {
            jobs.push_back({value, strategy});
        }
    }

    // Rows are independent; compute them on a small pool and assemble in
    // input order so the result is identical to a serial run.
    std::vector<std::variant<std::monostate, SweepRow, std::string>> slots(jobs.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
            const Job& job = jobs[i];
            try {
                const auto offsets = resolve_offsets(scenario, resolved, job.value,
                                                     job.strategy);
                SweepRow row;
                row.x = job.value;
                row.strategy = job.strategy;
                row.service = resolved.want_service
                                  ? service_amount(scenario, offsets,
                                                   resolved.service_rel_tol)
                                  : k_nan;
                row.otr = resolved.want_otr
                              ? outage_report(scenario, offsets, resolved.cth_bits,
                                              resolved.scan_step_s,
                                              resolved.refine_tol_s)
                                    .otr
                              : k_nan;
                slots[i] = row;
            } catch (const error& e) {
                slots[i] = describe(job.value, job.strategy) + ": " + e.what();
            }
        }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const size_t pool_size = std::min<size_t>(hw, jobs.size());
    if (pool_size <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(pool_size);
        for (size_t i = 0; i < pool_size; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (auto& slot : slots) {
        if (std::holds_alternative<SweepRow>(slot)) {
            result.rows.push_back(std::get<SweepRow>(slot));
        } else {
            result.skipped.push_back(std::get<std::string>(slot));
        }
    }
    if (result.rows.empty()) {
        throw invalid_parameter_error("every sweep combination was skipped: " +
                                      (result.skipped.empty()
                                           ? std::string("no combinations")
                                           : result.skipped.front()));
    }
    return result;
}

std::string to_string(FigureId id) {
    switch (id) {
        case FigureId::fig3: return "fig3";
        case FigureId::fig4: return "fig4";
        case FigureId::fig5: return "fig5";
        case FigureId::fig6: return "fig6";
        case FigureId::fig7: return "fig7";
        case FigureId::fig8: return "fig8";
        case FigureId::fig9: return "fig9";
    }
    return "unknown";
}

FigureId figure_id_from_string(const std::string& name) {
    if (name == "fig3") return FigureId::fig3;
    if (name == "fig4") return FigureId::fig4;
    if (name == "fig5") return FigureId::fig5;
    if (name == "fig6") return FigureId::fig6;
    if (name == "fig7") return FigureId::fig7;
    if (name == "fig8") return FigureId::fig8;
    if (name == "fig9") return FigureId::fig9;
    throw invalid_parameter_error("unknown figure id '" + name +
                                  "' (expected fig3..fig9)");
}

namespace {

Scenario baseline_scenario() {
    Scenario s;
    s.speed_mps = 100.0;
    s.train_length_m = 200.0;
    s.min_distance_m = 50.0;
    s.coverage_m = 1200.0;
    s.wavelength_m = 0.15;
    s.antenna_gain = 1.0;
    s.snr0 = calibrate_from_max_snr(5.0, 50.0);
    s.rate_threshold_bits = 0.15;
    return s;
}

constexpr double k_trace_step_s = 1e-3;

void add_trace_pair(FigurePreset& preset, const std::string& stem, int count,
                    double delta_m) {
    preset.traces.push_back({stem + "_equidistant_n" + std::to_string(count),
                             make_equidistant(preset.scenario, count),
                             k_trace_step_s});
    preset.traces.push_back({stem + "_fixed_interval_n" + std::to_string(count),
                             make_fixed_interval(preset.scenario, count, delta_m),
                             k_trace_step_s});
}

}  // namespace

FigurePreset figure_preset(FigureId id) {
    FigurePreset preset;
    preset.id = id;
    preset.scenario = baseline_scenario();

    SweepSpec spec;
    spec.cth_bits = preset.scenario.rate_threshold_bits;
    switch (id) {
        case FigureId::fig3: {
            // Two-antenna separation sweep, 0.1 m up to the train length.
            spec.variable = SweepVariable::antenna_separation;
            spec.values = {0.1, 0.2, 0.5, 1.0, 2.0, 5.0};
            for (int s = 10; s <= 200; s += 5) spec.values.push_back(s);
            spec.strategies = {Strategy::equidistant};
            spec.want_service = true;
            spec.want_otr = true;
            spec.antenna_count = 2;
            preset.sweep = spec;
            break;
        }
        case FigureId::fig4: {
            // Two-antenna train-length sweep far beyond the coverage, to
            // expose the rise-then-fall of the service amount.
            spec.variable = SweepVariable::train_length;
            const double lo = 10.0;
            const double hi = 3.0 * preset.scenario.coverage_m;
            const int points = 50;
            for (int i = 0; i < points; ++i) {
                spec.values.push_back(lo + (hi - lo) * i / (points - 1));
            }
            spec.strategies = {Strategy::equidistant};
            spec.want_service = true;
            spec.want_otr = false;
            spec.antenna_count = 2;
            preset.sweep = spec;
            break;
        }
        case FigureId::fig5: {
            for (int count : {10, 50, 100, 200}) {
                add_trace_pair(preset, "fig5", count, 1.0);
            }
            break;
        }
        case FigureId::fig6: {
            add_trace_pair(preset, "fig6", 600, 0.15);
            break;
        }
        case FigureId::fig7: {
            // Antenna-count sweep at half-wavelength pitch, up to the largest
            // even count the spacing rule admits (n_max = 2667 here).
            spec.variable = SweepVariable::antenna_count;
            for (int count = 2; count <= 2666; count += 6) {
                spec.values.push_back(count);
            }
            spec.strategies = {Strategy::equidistant, Strategy::fixed_interval};
            spec.want_service = true;
            spec.want_otr = false;
            spec.delta_m = 0.075;
            preset.sweep = spec;
            break;
        }
        case FigureId::fig8: {
            spec.variable = SweepVariable::antenna_count;
            spec.values = {2, 4, 10, 20, 50, 100, 200};
            spec.strategies = {Strategy::equidistant, Strategy::fixed_interval};
            spec.want_service = true;
            spec.want_otr = true;
            spec.delta_m = 1.0;
            preset.sweep = spec;
            break;
        }
        case FigureId::fig9: {
            spec.variable = SweepVariable::delta;
            spec.values = {0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
            spec.strategies = {Strategy::fixed_interval};
            spec.want_service = true;
            spec.want_otr = true;
            spec.antenna_count = 20;
            preset.sweep = spec;
            break;
        }
    }
    return preset;
}

int count_rate_peaks(const CapacityTrace& trace) {
    if (trace.capacities_bits.size() < 3) {
        throw invalid_parameter_error("peak counting needs at least 3 samples");
    }
    // Collapse plateaus so a run of equal samples yields one candidate.
    std::vector<double> merged;
    merged.reserve(trace.capacities_bits.size());
    for (double c : trace.capacities_bits) {
        if (merged.empty() || c != merged.back()) merged.push_back(c);
    }
    int peaks = 0;
    for (size_t i = 1; i + 1 < merged.size(); ++i) {
        if (merged[i - 1] < merged[i] && merged[i] > merged[i + 1]) ++peaks;
    }
    return peaks;
}

}  // namespace hstlab

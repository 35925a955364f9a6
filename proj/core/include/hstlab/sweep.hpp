#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hstlab/deployment.hpp"
#include "hstlab/metrics.hpp"
#include "hstlab/scenario.hpp"

namespace hstlab {

enum class SweepVariable {
    antenna_separation,  // two-antenna layout {0, s}; equidistant label
    train_length,        // equidistant over a varying L
    antenna_count,       // N sweep; fixed-interval arm needs delta_m
    delta                // fixed-interval pitch sweep at fixed N
};

std::string to_string(SweepVariable variable);
SweepVariable sweep_variable_from_string(const std::string& name);

struct SweepSpec {
    SweepVariable variable = SweepVariable::antenna_separation;
    std::vector<double> values;        // strictly increasing, non-empty
    std::vector<Strategy> strategies;  // equidistant / fixed_interval
    bool want_service = true;
    bool want_otr = false;

    int antenna_count = 2;   // for separation / train_length / delta sweeps
    double delta_m = 0.0;    // for antenna_count sweeps, fixed-interval arm
    double cth_bits = -1.0;  // < 0 -> scenario's rate threshold

    double service_rel_tol = k_default_service_rel_tol;
    double scan_step_s = 0.0;  // 0 -> default
    double refine_tol_s = 0.0;  // 0 -> default
};

struct SweepRow {
    double x = 0.0;
    Strategy strategy = Strategy::equidistant;
    double service = 0.0;  // NaN when not requested
    double otr = 0.0;      // NaN when not requested
};

struct SweepResult {
    SweepSpec spec;  // resolved copy (tolerances and threshold pinned)
    std::vector<SweepRow> rows;
    std::vector<std::string> skipped;  // "x=..., strategy=...: reason"
};

/// Evaluates every (value, strategy) combination, in value-major input
/// order. Combinations that violate deployment constraints are recorded in
/// `skipped` with a reason. Rows are computed independently (possibly in
/// parallel) and assembled in input order. Throws invalid_parameter_error
/// if every combination was skipped.
SweepResult run_sweep(const Scenario& scenario, const SweepSpec& spec);

enum class FigureId { fig3, fig4, fig5, fig6, fig7, fig8, fig9 };

std::string to_string(FigureId id);
FigureId figure_id_from_string(const std::string& name);

struct TraceJob {
    std::string label;  // also the output CSV stem
    Deployment deployment;
    double sample_step_s = 0.0;
};

/// A fully resolved experiment: the base scenario plus either a sweep or a
/// set of capacity traces.
struct FigurePreset {
    FigureId id = FigureId::fig3;
    Scenario scenario;
    std::optional<SweepSpec> sweep;
    std::vector<TraceJob> traces;
};

/// Canned experiment configurations over the standard 100 m/s, 200 m train,
/// 1200 m coverage scenario (5 dB peak SNR, 0.15 bits/s/Hz threshold).
FigurePreset figure_preset(FigureId id);

/// Interior strict local maxima after collapsing consecutive equal samples;
/// window endpoints are never counted as peaks.
int count_rate_peaks(const CapacityTrace& trace);

}  // namespace hstlab

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "hstlab/analytic.hpp"
#include "hstlab/deployment.hpp"
#include "hstlab/scenario.hpp"
#include "hstlab/sweep.hpp"

namespace hstlab {

/// A parsed scenario file: the physical scenario plus the optional
/// deployment section.
struct ScenarioFile {
    Scenario scenario;
    std::optional<Deployment> deployment;
};

/// Parses the scenario JSON. Unknown keys anywhere are a hard error.
/// Expected shape:
///   {
///     "speed_mps": 100, "train_length_m": 200, "d0_m": 50,
///     "coverage_D_m": 1200,
///     "wavelength_m": 0.15          (or "carrier_freq_hz": 2e9),
///     "antenna_gain": 1.0,          (optional, default 1)
///     "c_th_bits": 0.15,
///     "calibration": {"mode": "max_snr", "max_snr_db": 5}
///        or {"mode": "physics", "tx_power_w": ..,
///            "noise_density_w_per_hz": .., "bandwidth_hz": ..},
///     "deployment": {"strategy": "equidistant"|"fixed_interval"|"explicit",
///                    "n": 2, "delta_m": .., "offsets_m": [..]}   (optional)
///   }
ScenarioFile parse_scenario_json(const std::string& text);
ScenarioFile load_scenario_file(const std::string& path);

/// Parses the sweep-spec JSON used by the `sweep` subcommand:
///   {"variable": "antenna_separation"|"train_length"|"antenna_count"|"delta",
///    "values": [..], "strategies": ["equidistant", ..],
///    "outputs": ["service","otr"],
///    "n": 2, "delta_m": .., "cth_bits": ..,          (as applicable)
///    "rel_tol": .., "scan_step_s": .., "refine_tol_s": ..}
SweepSpec parse_sweep_spec_json(const std::string& text);
SweepSpec load_sweep_spec_file(const std::string& path);

/// FNV-1a 64-bit.
uint64_t fnv1a64(std::string_view bytes);

/// Hash of the resolved physical parameters, used in CSV provenance lines.
uint64_t scenario_fingerprint(const Scenario& scenario);

/// Spacing-rule antenna-count bound, reported both ways the formula can be
/// read: floor(L/delta)+1 and plain floor(L/delta).
struct NMaxInfo {
    double delta_m = 0.0;
    int floor_plus_one = 0;
    int floor_only = 0;
};

/// Serializes the full validation report consumed by the `validate`
/// subcommand: {"critical_points": .., "crossings": .., "otr": ..,
/// "lemma1": [..], "lemma3": [..], ..}.
std::string validate_report_json(const AnalyticReport& report,
                                 std::span<const ServiceSlopeSample> slope_profile,
                                 std::span<const PairDistances> pair_distances,
                                 const NMaxInfo& n_max_info);

}  // namespace hstlab

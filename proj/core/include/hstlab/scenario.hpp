#pragma once

#include <utility>

namespace hstlab {

/// Physical and simulation parameters shared by every other module.
///
/// Everything is linear and SI: the per-antenna SNR at distance d is
/// snr0 / d^2, capacities are base-2 logs in bits/s/Hz. Decibels appear
/// only at I/O boundaries. Instances are immutable by convention after
/// construction and safe to share across threads.
struct Scenario {
    double speed_mps = 0.0;            // train speed v
    double train_length_m = 0.0;       // L
    double min_distance_m = 0.0;       // d0, perpendicular BS-to-track distance
    double coverage_m = 0.0;           // D, inter-BS spacing along the track
    double wavelength_m = 0.0;         // carrier wavelength
    double antenna_gain = 1.0;         // G_l, linear
    double snr0 = 0.0;                 // link constant: SNR(d) = snr0 / d^2
    double rate_threshold_bits = 0.0;  // C_th in bits/s/Hz

    double half_window_s() const { return coverage_m / (2.0 * speed_mps); }
    double window_duration_s() const { return coverage_m / speed_mps; }
    double half_wavelength_m() const { return 0.5 * wavelength_m; }

    /// Throws invalid_parameter_error if any field is non-finite or out of
    /// its admissible range.
    void validate() const;
};

/// snr0 such that the per-antenna SNR at closest approach (distance d0)
/// equals the given maximum received SNR: 10^(max_snr_db/10) * d0^2.
double calibrate_from_max_snr(double max_snr_db, double d0_m);

/// snr0 from the link budget, Pt*Gl*lambda^2 / ((4*pi)^2 * N0 * B).
double calibrate_from_physics(double tx_power_w,
                              double antenna_gain,
                              double wavelength_m,
                              double noise_density_w_per_hz,
                              double bandwidth_hz);

/// The serving window (-D/(2v), +D/(2v)); total duration D/v.
std::pair<double, double> observation_window(const Scenario& scenario);

}  // namespace hstlab

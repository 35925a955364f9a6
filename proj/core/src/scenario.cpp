#include "hstlab/scenario.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hstlab/errors.hpp"

namespace hstlab {

namespace {

void require_positive_finite(double value, const char* name) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw invalid_parameter_error(std::string(name) +
                                      " must be positive and finite, got " +
                                      std::to_string(value));
    }
}

}  // namespace

void Scenario::validate() const {
    require_positive_finite(speed_mps, "speed_mps");
    require_positive_finite(train_length_m, "train_length_m");
    require_positive_finite(min_distance_m, "min_distance_m");
    require_positive_finite(coverage_m, "coverage_m");
    require_positive_finite(wavelength_m, "wavelength_m");
    require_positive_finite(antenna_gain, "antenna_gain");
    require_positive_finite(snr0, "snr0");
    if (!std::isfinite(rate_threshold_bits) || rate_threshold_bits < 0.0) {
        throw invalid_parameter_error("rate_threshold_bits must be >= 0");
    }
    require_positive_finite(half_window_s(), "coverage_m / (2 * speed_mps)");
}

double calibrate_from_max_snr(double max_snr_db, double d0_m) {
    if (!std::isfinite(max_snr_db)) {
        throw invalid_parameter_error("max_snr_db must be finite");
    }
    require_positive_finite(d0_m, "d0_m");
    return std::pow(10.0, max_snr_db / 10.0) * d0_m * d0_m;
}

double calibrate_from_physics(double tx_power_w, double antenna_gain,
                              double wavelength_m, double noise_density_w_per_hz,
                              double bandwidth_hz) {
    require_positive_finite(tx_power_w, "tx_power_w");
    require_positive_finite(antenna_gain, "antenna_gain");
    require_positive_finite(wavelength_m, "wavelength_m");
    require_positive_finite(noise_density_w_per_hz, "noise_density_w_per_hz");
    require_positive_finite(bandwidth_hz, "bandwidth_hz");

    const double four_pi = 4.0 * std::numbers::pi;
    return tx_power_w * antenna_gain * wavelength_m * wavelength_m /
           (four_pi * four_pi * noise_density_w_per_hz * bandwidth_hz);
}

std::pair<double, double> observation_window(const Scenario& scenario) {
    scenario.validate();
    const double half = scenario.half_window_s();
    return {-half, half};
}

}  // namespace hstlab

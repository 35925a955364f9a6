#include "hstlab/deployment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hstlab/errors.hpp"
#include "hstlab/scenario.hpp"

namespace hstlab {

std::string to_string(Strategy strategy) {
    switch (strategy) {
        case Strategy::equidistant: return "equidistant";
        case Strategy::fixed_interval: return "fixed_interval";
        case Strategy::explicit_offsets: return "explicit";
    }
    return "unknown";
}

Strategy strategy_from_string(const std::string& name) {
    if (name == "equidistant") return Strategy::equidistant;
    if (name == "fixed_interval") return Strategy::fixed_interval;
    if (name == "explicit") return Strategy::explicit_offsets;
    throw invalid_parameter_error("unknown strategy '" + name + "'");
}

std::vector<double> equidistant_offsets(int antenna_count, double train_length_m,
                                        double min_spacing_m) {
    if (antenna_count < 2) {
        throw invalid_parameter_error(
            "equidistant layout needs at least 2 antennas, got " +
            std::to_string(antenna_count));
    }
    if (!std::isfinite(train_length_m) || train_length_m <= 0.0) {
        throw invalid_parameter_error("train length must be positive");
    }
    const double spacing = train_length_m / (antenna_count - 1);
    if (min_spacing_m > 0.0 && spacing < min_spacing_m) {
        throw spacing_violation_error(
            "equidistant spacing " + std::to_string(spacing) +
            " m is below the minimum spacing " + std::to_string(min_spacing_m) + " m");
    }
    std::vector<double> offsets(antenna_count);
    for (int n = 0; n < antenna_count; ++n) {
        offsets[n] = n * train_length_m / (antenna_count - 1);
    }
    return offsets;
}

std::vector<double> fixed_interval_offsets(int antenna_count, double delta_m,
                                           double train_length_m,
                                           double min_spacing_m) {
    if (antenna_count < 2 || antenna_count % 2 != 0) {
        throw invalid_parameter_error(
            "fixed-interval layout needs an even antenna count >= 2, got " +
            std::to_string(antenna_count));
    }
    if (!std::isfinite(train_length_m) || train_length_m <= 0.0) {
        throw invalid_parameter_error("train length must be positive");
    }
    if (!std::isfinite(delta_m) || delta_m <= 0.0) {
        throw invalid_parameter_error("delta must be positive");
    }
    if (min_spacing_m > 0.0 && delta_m < min_spacing_m) {
        throw spacing_violation_error("delta " + std::to_string(delta_m) +
                                      " m is below the minimum spacing " +
                                      std::to_string(min_spacing_m) + " m");
    }
    const double max_delta = train_length_m / (antenna_count - 1);
    if (delta_m > max_delta) {
        throw spacing_violation_error(
            "delta " + std::to_string(delta_m) + " m exceeds L/(N-1) = " +
            std::to_string(max_delta) + " m; the two groups would collide");
    }

    const int half = antenna_count / 2;
    std::vector<double> offsets(antenna_count);
    for (int n = 1; n <= half; ++n) {
        offsets[n - 1] = (n - 1) * delta_m;
    }
    for (int n = half + 1; n <= antenna_count; ++n) {
        offsets[n - 1] = train_length_m - (antenna_count - n) * delta_m;
    }
    return offsets;
}

int n_max(double train_length_m, double delta_m) {
    if (!std::isfinite(delta_m) || delta_m <= 0.0) {
        throw invalid_parameter_error("delta must be positive");
    }
    if (!std::isfinite(train_length_m) || train_length_m <= 0.0) {
        throw invalid_parameter_error("train length must be positive");
    }
    const double ratio = train_length_m / delta_m;
    if (ratio >= static_cast<double>(std::numeric_limits<int>::max() - 1)) {
        throw invalid_parameter_error("delta is too small relative to the train length");
    }
    return static_cast<int>(std::floor(ratio)) + 1;
}

void validate_offsets(const std::vector<double>& offsets_m, double train_length_m,
                      double min_spacing_m) {
    if (offsets_m.empty()) {
        throw invalid_parameter_error("deployment needs at least one antenna");
    }
    for (double o : offsets_m) {
        if (!std::isfinite(o) || o < 0.0 || o > train_length_m) {
            throw spacing_violation_error("offset " + std::to_string(o) +
                                          " m is outside the train [0, " +
                                          std::to_string(train_length_m) + "] m");
        }
    }
    if (min_spacing_m > 0.0 && offsets_m.size() > 1) {
        std::vector<double> sorted(offsets_m);
        std::sort(sorted.begin(), sorted.end());
        // relative slack so grid-generated gaps an ulp below the bound pass
        const double floor = min_spacing_m * (1.0 - 1e-9);
        for (size_t i = 1; i < sorted.size(); ++i) {
            const double gap = sorted[i] - sorted[i - 1];
            if (gap < floor) {
                throw spacing_violation_error(
                    "antennas at " + std::to_string(sorted[i - 1]) + " m and " +
                    std::to_string(sorted[i]) + " m are closer than the minimum spacing " +
                    std::to_string(min_spacing_m) + " m");
            }
        }
    }
}

Deployment make_equidistant(const Scenario& scenario, int antenna_count) {
    scenario.validate();
    Deployment d;
    d.strategy = Strategy::equidistant;
    d.antenna_count = antenna_count;
    d.offsets_m = equidistant_offsets(antenna_count, scenario.train_length_m,
                                      scenario.half_wavelength_m());
    return d;
}

Deployment make_fixed_interval(const Scenario& scenario, int antenna_count,
                               double delta_m) {
    scenario.validate();
    Deployment d;
    d.strategy = Strategy::fixed_interval;
    d.antenna_count = antenna_count;
    d.delta_m = delta_m;
    d.offsets_m = fixed_interval_offsets(antenna_count, delta_m,
                                         scenario.train_length_m,
                                         scenario.half_wavelength_m());
    validate_offsets(d.offsets_m, scenario.train_length_m,
                     scenario.half_wavelength_m());
    return d;
}

Deployment make_explicit(const Scenario& scenario, std::vector<double> offsets_m) {
    scenario.validate();
    validate_offsets(offsets_m, scenario.train_length_m,
                     scenario.half_wavelength_m());
    Deployment d;
    d.strategy = Strategy::explicit_offsets;
    d.antenna_count = static_cast<int>(offsets_m.size());
    d.offsets_m = std::move(offsets_m);
    return d;
}

}  // namespace hstlab

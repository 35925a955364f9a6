#pragma once

#include <span>
#include <vector>

#include "hstlab/deployment.hpp"
#include "hstlab/scenario.hpp"

namespace hstlab {

/// Per-antenna breakdown of the link at one time instant.
struct LinkState {
    double time_s = 0.0;
    std::vector<double> distances_m;  // BS-to-antenna distances
    std::vector<double> snrs;         // linear, snr0 / d^2
    double capacity_bits = 0.0;       // log2(1 + sum of snrs)
};

/// sqrt((v*t - offset)^2 + d0^2). Total on finite inputs.
double distance_at(const Scenario& scenario, double offset_m, double t_s);

/// Post-combining SNR: sum over antennas of snr0 / d_n(t)^2.
double snr_sum_at(const Scenario& scenario, std::span<const double> offsets_m,
                  double t_s);

/// Instantaneous capacity log2(1 + snr_sum) in bits/s/Hz. Strictly positive
/// and finite for any non-empty offset set.
double capacity_at(const Scenario& scenario, std::span<const double> offsets_m,
                   double t_s);
double capacity_at(const Scenario& scenario, const Deployment& deployment,
                   double t_s);

LinkState link_state_at(const Scenario& scenario, const Deployment& deployment,
                        double t_s);

}  // namespace hstlab

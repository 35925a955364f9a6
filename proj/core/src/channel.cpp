#include "hstlab/channel.hpp"

#include <cmath>

#include "hstlab/errors.hpp"

namespace hstlab {

double distance_at(const Scenario& scenario, double offset_m, double t_s) {
    const double along = scenario.speed_mps * t_s - offset_m;
    return std::sqrt(along * along +
                     scenario.min_distance_m * scenario.min_distance_m);
}

double snr_sum_at(const Scenario& scenario, std::span<const double> offsets_m,
                  double t_s) {
    const double x = scenario.speed_mps * t_s;
    const double d0_sq = scenario.min_distance_m * scenario.min_distance_m;
    double inv_sum = 0.0;
    for (double offset : offsets_m) {
        const double dx = x - offset;
        inv_sum += 1.0 / (dx * dx + d0_sq);
    }
    return scenario.snr0 * inv_sum;
}

double capacity_at(const Scenario& scenario, std::span<const double> offsets_m,
                   double t_s) {
    return std::log2(1.0 + snr_sum_at(scenario, offsets_m, t_s));
}

double capacity_at(const Scenario& scenario, const Deployment& deployment,
                   double t_s) {
    return capacity_at(scenario, std::span<const double>(deployment.offsets_m),
                       t_s);
}

LinkState link_state_at(const Scenario& scenario, const Deployment& deployment,
                        double t_s) {
    if (deployment.offsets_m.empty()) {
        throw invalid_parameter_error("deployment has no antennas");
    }
    LinkState state;
    state.time_s = t_s;
    state.distances_m.reserve(deployment.offsets_m.size());
    state.snrs.reserve(deployment.offsets_m.size());
    double sum = 0.0;
    for (double offset : deployment.offsets_m) {
        const double d = distance_at(scenario, offset, t_s);
        const double snr = scenario.snr0 / (d * d);
        state.distances_m.push_back(d);
        state.snrs.push_back(snr);
        sum += snr;
    }
    state.capacity_bits = std::log2(1.0 + sum);
    return state;
}

}  // namespace hstlab

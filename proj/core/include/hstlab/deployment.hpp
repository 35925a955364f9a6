#pragma once

#include <string>
#include <vector>

namespace hstlab {

struct Scenario;

enum class Strategy {
    equidistant,      // N antennas evenly spread over the full train length
    fixed_interval,   // two groups of N/2 antennas pitched delta apart,
                      // anchored at the train head and tail
    explicit_offsets  // caller-supplied positions
};

std::string to_string(Strategy strategy);
Strategy strategy_from_string(const std::string& name);

/// Antenna positions along the train. offsets_m[n] is the displacement of
/// antenna n from the train-head reference; the antenna's track coordinate
/// at time t is v*t - offsets_m[n].
struct Deployment {
    Strategy strategy = Strategy::explicit_offsets;
    int antenna_count = 0;
    double delta_m = 0.0;  // group pitch; meaningful for fixed_interval only
    std::vector<double> offsets_m;
};

/// Evenly spaced offsets (n-1)*L/(N-1) for n = 1..N; first 0, last L.
/// min_spacing_m, when positive, enforces the decorrelation constraint.
std::vector<double> equidistant_offsets(int antenna_count, double train_length_m,
                                        double min_spacing_m = 0.0);

/// Two groups of N/2 antennas with internal pitch delta: the head group at
/// (n-1)*delta from the train head, the tail group at L-(N-n)*delta so that
/// antenna N sits exactly at the tail. Requires even N and
/// min_spacing <= delta <= L/(N-1); under that bound the inter-group gap is
/// at least L/(N-1) and cannot collide.
std::vector<double> fixed_interval_offsets(int antenna_count, double delta_m,
                                           double train_length_m,
                                           double min_spacing_m = 0.0);

/// Largest antenna count the spacing rule allows: floor(L/delta) + 1.
int n_max(double train_length_m, double delta_m);

/// Checks that every offset lies in [0, L] and that distinct offsets are at
/// least min_spacing_m apart. Throws spacing_violation_error.
void validate_offsets(const std::vector<double>& offsets_m, double train_length_m,
                      double min_spacing_m);

Deployment make_equidistant(const Scenario& scenario, int antenna_count);
Deployment make_fixed_interval(const Scenario& scenario, int antenna_count,
                               double delta_m);
Deployment make_explicit(const Scenario& scenario, std::vector<double> offsets_m);

}  // namespace hstlab

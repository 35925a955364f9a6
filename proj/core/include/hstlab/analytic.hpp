#pragma once

#include <array>
#include <span>
#include <vector>

#include "hstlab/scenario.hpp"

namespace hstlab {

/// Threshold on the combined SNR: (2^cth - 1) / snr0.
double snr_threshold_beta(double cth_bits, double snr0);
/// Natural-log variant (e^cth - 1) / snr0, kept for side-by-side reports.
double snr_threshold_beta_natural(double cth_bits, double snr0);

/// Roots of dC/dt for the two-antenna layout {0, separation}: the numeric
/// set (sign scan of the derivative numerator + bisection) alongside the
/// closed-form candidates. closed_form_s[1] is separation/(2v), the local
/// minimum; [0] and [2] are the rate-peak formulas, which are evaluated
/// verbatim and flagged non-real when their radicand is negative.
struct CriticalPoints {
    std::vector<double> numeric_s;
    std::array<double, 3> closed_form_s{};   // NaN where not real
    std::array<bool, 3> closed_form_real{};
};

/// A closed-form threshold-crossing time, annotated with the capacity
/// residual actually measured at that time.
struct ThresholdCrossing {
    double time_s = 0.0;
    double residual_bits = 0.0;  // |C(t) - cth|
};

/// Pair distance within group m (antennas m and N+1-m) for both strategies:
/// d_equ = L - 2*(L/(N-1))*(m-1), d_fix = L - 2*delta*(m-1).
struct PairDistances {
    int group_index = 0;  // m = 1..N/2
    double equidistant_m = 0.0;
    double fixed_interval_m = 0.0;
};

/// Central-difference slope of the service amount with respect to the
/// two-antenna separation L, evaluated at one train length.
struct ServiceSlopeSample {
    double train_length_m = 0.0;
    double slope = 0.0;  // d(service)/dL, bits/Hz per meter
    int sign = 0;        // -1, 0, +1
};

CriticalPoints critical_points_n2(const Scenario& scenario, double separation_m);

/// Closed-form solutions of C(t) = cth for the layout {0, separation},
/// evaluated verbatim: T = (separation +- Phi)/(2v) and (separation -+ Psi)/(2v)
/// with Phi = sqrt((Q+Theta)/beta), Psi = sqrt((Q-Theta)/beta),
/// Q = beta*(s^2 - 4 d0^2), Theta = 4*sqrt(beta*s^2 - beta^2 s^2 d0^2 + 1) + 4.
/// Non-real pairs are omitted; real times are returned sorted, each with its
/// measured residual. A residual above tolerance marks a formula discrepancy
/// to be reported, never silently corrected.
std::vector<ThresholdCrossing> threshold_crossings_n2(const Scenario& scenario,
                                                      double separation_m,
                                                      double cth_bits);

/// Closed-form outage time ratio 1 - Phi/D for the two-crossing regime
/// (cth below the capacity at the local minimum, with both crossings inside
/// the window). Outside the regime throws regime_error; use outage_report.
/// natural_log_threshold selects the (e^cth - 1) variant of beta.
double otr_closed_form_n2(const Scenario& scenario, double separation_m,
                          double cth_bits, bool natural_log_threshold = false);

/// d(service)/dL by central differences (step max(1 m, 1e-3*L)) for the
/// two-antenna layout {0, L} at each requested train length. Throws if a
/// length beyond the coverage D shows a non-negative slope.
std::vector<ServiceSlopeSample> service_slope_profile(
    const Scenario& scenario, std::span<const double> train_lengths_m);

/// Per-group pair distances for both strategies, m = 1..N/2. Requires even
/// N and delta <= L/(N-1).
std::vector<PairDistances> group_pair_distances(int antenna_count,
                                                double train_length_m,
                                                double delta_m);

/// Cross-validation bundle for the two-antenna closed forms: everything the
/// validate report needs, with deviations measured against the numeric
/// oracles (sign-scan critical points, bisection crossings, scanned OTR).
struct AnalyticReport {
    double separation_m = 0.0;
    double cth_bits = 0.0;
    double beta = 0.0;
    double beta_natural = 0.0;

    CriticalPoints critical;
    double critical_max_abs_dev_s = 0.0;  // real closed forms vs nearest numeric

    std::vector<ThresholdCrossing> crossings;
    std::vector<double> numeric_crossings_s;
    double crossing_max_abs_dev_s = 0.0;
    double crossing_max_residual_bits = 0.0;

    bool otr_closed_in_regime = false;
    double otr_closed = 0.0;          // NaN when out of regime
    double otr_closed_natural = 0.0;  // NaN when out of regime
    double otr_numeric = 0.0;
    double otr_abs_dev = 0.0;  // NaN when out of regime
};

AnalyticReport analyze_n2(const Scenario& scenario, double separation_m,
                          double cth_bits);

}  // namespace hstlab

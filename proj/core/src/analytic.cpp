#include "hstlab/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hstlab/channel.hpp"
#include "hstlab/errors.hpp"
#include "hstlab/metrics.hpp"

namespace hstlab {

namespace {

constexpr double k_nan = std::numeric_limits<double>::quiet_NaN();
constexpr double k_critical_point_tol_s = 1e-10;

// Numerator of dC/dt for the layout {0, s}, with the positive factors
// 2*snr0*v and the log denominator stripped: the sign of
// (s - x)/(((s-x)^2 + d0^2)^2) - x/((x^2 + d0^2)^2) at x = v*t.
double capacity_slope_numerator(double separation, double d0_sq, double x) {
    const double far = separation - x;
    const double far_den = far * far + d0_sq;
    const double near_den = x * x + d0_sq;
    return far / (far_den * far_den) - x / (near_den * near_den);
}

void require_separation(const Scenario& scenario, double separation_m) {
    scenario.validate();
    if (!std::isfinite(separation_m) || separation_m <= 0.0) {
        throw invalid_parameter_error("separation must be positive");
    }
}

}  // namespace

double snr_threshold_beta(double cth_bits, double snr0) {
    return (std::exp2(cth_bits) - 1.0) / snr0;
}

double snr_threshold_beta_natural(double cth_bits, double snr0) {
    return (std::exp(cth_bits) - 1.0) / snr0;
}

CriticalPoints critical_points_n2(const Scenario& scenario, double separation_m) {
    require_separation(scenario, separation_m);
    const double v = scenario.speed_mps;
    const double d0_sq = scenario.min_distance_m * scenario.min_distance_m;
    const auto [t_start, t_end] = observation_window(scenario);

    auto slope = [&](double t) {
        return capacity_slope_numerator(separation_m, d0_sq, v * t);
    };

    CriticalPoints result;

    const int scan_intervals = 120000;
    const double h = (t_end - t_start) / scan_intervals;
    double last_t = k_nan;
    double last_g = 0.0;
    for (int i = 0; i <= scan_intervals; ++i) {
        const double t = (i == scan_intervals) ? t_end : t_start + i * h;
        const double g = slope(t);
        if (g == 0.0) {
            result.numeric_s.push_back(t);
            last_t = k_nan;  // the bracket around an exact hit is consumed
            continue;
        }
        if (!std::isnan(last_t) && (g < 0.0) != (last_g < 0.0)) {
            double lo = last_t;
            double hi = t;
            const bool lo_neg = last_g < 0.0;
            while (hi - lo > k_critical_point_tol_s) {
                const double mid = 0.5 * (lo + hi);
                const double gm = slope(mid);
                if (gm == 0.0) {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if ((gm < 0.0) == lo_neg) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            result.numeric_s.push_back(0.5 * (lo + hi));
        }
        last_t = t;
        last_g = g;
    }

    // Closed-form candidates, evaluated exactly as written. The middle one,
    // s/(2v), is the local minimum between the rate peaks; the outer two are
    // flagged non-real when their radicand is negative instead of raising.
    const double s = separation_m;
    const double inner = std::sqrt(2.0 * s * (s * s + 4.0 * d0_sq));
    const double radicand_low = s - inner - s * s - 4.0 * d0_sq;
    const double radicand_high = s + inner - s * s - 4.0 * d0_sq;

    result.closed_form_real = {radicand_low >= 0.0, true, radicand_high >= 0.0};
    result.closed_form_s = {
        radicand_low >= 0.0 ? std::sqrt(radicand_low) / (2.0 * v) : k_nan,
        s / (2.0 * v),
        radicand_high >= 0.0 ? std::sqrt(radicand_high) / (2.0 * v) : k_nan,
    };
    return result;
}

std::vector<ThresholdCrossing> threshold_crossings_n2(const Scenario& scenario,
                                                      double separation_m,
                                                      double cth_bits) {
    require_separation(scenario, separation_m);
    if (!std::isfinite(cth_bits) || cth_bits < 0.0) {
        throw invalid_parameter_error("threshold must be >= 0");
    }

    std::vector<ThresholdCrossing> crossings;
    const double beta = snr_threshold_beta(cth_bits, scenario.snr0);
    if (beta <= 0.0) {
        return crossings;  // capacity is strictly positive, no crossings at cth = 0
    }

    const double s = separation_m;
    const double d0_sq = scenario.min_distance_m * scenario.min_distance_m;
    const double v = scenario.speed_mps;
    const double radicand = beta * s * s - beta * beta * s * s * d0_sq + 1.0;
    if (radicand < 0.0) {
        return crossings;  // threshold above the whole curve
    }
    const double theta = 4.0 * std::sqrt(radicand) + 4.0;
    const double q = beta * (s * s - 4.0 * d0_sq);

    const std::array<double, 2> offsets = {0.0, s};
    auto push_pair = [&](double half_width_sq) {
        if (half_width_sq < 0.0) return;  // pair absent in this regime
        const double w = std::sqrt(half_width_sq);
        for (double t : {(s - w) / (2.0 * v), (s + w) / (2.0 * v)}) {
            const double residual =
                std::abs(capacity_at(scenario, offsets, t) - cth_bits);
            crossings.push_back({t, residual});
        }
    };
    push_pair((q + theta) / beta);
    push_pair((q - theta) / beta);

    std::sort(crossings.begin(), crossings.end(),
              [](const ThresholdCrossing& a, const ThresholdCrossing& b) {
                  return a.time_s < b.time_s;
              });
    return crossings;
}

double otr_closed_form_n2(const Scenario& scenario, double separation_m,
                          double cth_bits, bool natural_log_threshold) {
    require_separation(scenario, separation_m);
    if (!std::isfinite(cth_bits) || cth_bits <= 0.0) {
        throw regime_error("threshold must be positive; use outage_report");
    }
    const double beta = natural_log_threshold
                            ? snr_threshold_beta_natural(cth_bits, scenario.snr0)
                            : snr_threshold_beta(cth_bits, scenario.snr0);

    const double s = separation_m;
    const double v = scenario.speed_mps;
    const std::array<double, 2> offsets = {0.0, s};

    // Two-crossing regime: the combined SNR at the local minimum s/(2v) must
    // stay above the threshold SNR, so the curve dips below the threshold
    // only in the two outer tails.
    const double snr_at_min = snr_sum_at(scenario, offsets, s / (2.0 * v));
    if (!(snr_at_min > beta * scenario.snr0)) {
        throw regime_error(
            "threshold reaches the local capacity minimum (more than two "
            "crossings); use outage_report");
    }

    const double d0_sq = scenario.min_distance_m * scenario.min_distance_m;
    const double radicand = beta * s * s - beta * beta * s * s * d0_sq + 1.0;
    if (radicand < 0.0) {
        throw regime_error("threshold above the capacity curve; use outage_report");
    }
    const double theta = 4.0 * std::sqrt(radicand) + 4.0;
    const double q = beta * (s * s - 4.0 * d0_sq);
    const double phi_sq = (q + theta) / beta;
    if (phi_sq < 0.0) {
        throw regime_error("no real crossings; use outage_report");
    }
    const double phi = std::sqrt(phi_sq);
    if (s + phi > scenario.coverage_m) {
        throw regime_error(
            "crossings fall outside the observation window; use outage_report");
    }
    return 1.0 - phi / scenario.coverage_m;
}

std::vector<ServiceSlopeSample> service_slope_profile(
    const Scenario& scenario, std::span<const double> train_lengths_m) {
    scenario.validate();
    std::vector<ServiceSlopeSample> profile;
    profile.reserve(train_lengths_m.size());

    // Relative step with a 1 m floor keeps truncation error and quadrature
    // noise balanced; the quadrature runs tighter than the default so the
    // difference of two ~1e-9-accurate values stays well inside the slope.
    constexpr double quad_rel_tol = 1e-9;
    for (double length : train_lengths_m) {
        if (!std::isfinite(length) || length <= 1.0) {
            throw invalid_parameter_error(
                "train lengths must exceed 1 m for the central difference");
        }
        const double h = std::max(1.0, 1e-3 * length);
        const std::array<double, 2> upper = {0.0, length + h};
        const std::array<double, 2> lower = {0.0, length - h};
        const double slope = (service_amount(scenario, upper, quad_rel_tol) -
                              service_amount(scenario, lower, quad_rel_tol)) /
                             (2.0 * h);
        const int sign = (slope > 0.0) - (slope < 0.0);
        if (length > scenario.coverage_m && sign >= 0) {
            throw error("service slope is not negative at train length " +
                        std::to_string(length) + " m beyond the coverage " +
                        std::to_string(scenario.coverage_m) + " m");
        }
        profile.push_back({length, slope, sign});
    }
    return profile;
}

std::vector<PairDistances> group_pair_distances(int antenna_count,
                                                double train_length_m,
                                                double delta_m) {
    if (antenna_count < 2 || antenna_count % 2 != 0) {
        throw invalid_parameter_error("antenna count must be even and >= 2");
    }
    if (!std::isfinite(train_length_m) || train_length_m <= 0.0) {
        throw invalid_parameter_error("train length must be positive");
    }
    if (!std::isfinite(delta_m) || delta_m <= 0.0) {
        throw invalid_parameter_error("delta must be positive");
    }
    const double equ_spacing = train_length_m / (antenna_count - 1);
    if (delta_m > equ_spacing) {
        throw spacing_violation_error("delta " + std::to_string(delta_m) +
                                      " m exceeds L/(N-1) = " +
                                      std::to_string(equ_spacing) + " m");
    }
    std::vector<PairDistances> groups;
    groups.reserve(antenna_count / 2);
    for (int m = 1; m <= antenna_count / 2; ++m) {
        groups.push_back({m, train_length_m - 2.0 * equ_spacing * (m - 1),
                          train_length_m - 2.0 * delta_m * (m - 1)});
    }
    return groups;
}

AnalyticReport analyze_n2(const Scenario& scenario, double separation_m,
                          double cth_bits) {
    require_separation(scenario, separation_m);
    AnalyticReport report;
    report.separation_m = separation_m;
    report.cth_bits = cth_bits;
    report.beta = snr_threshold_beta(cth_bits, scenario.snr0);
    report.beta_natural = snr_threshold_beta_natural(cth_bits, scenario.snr0);

    report.critical = critical_points_n2(scenario, separation_m);
    auto nearest_dev = [](double value, const std::vector<double>& candidates) {
        double best = k_nan;
        for (double c : candidates) {
            const double dev = std::abs(value - c);
            if (std::isnan(best) || dev < best) best = dev;
        }
        return best;
    };
    report.critical_max_abs_dev_s = 0.0;
    for (size_t i = 0; i < report.critical.closed_form_s.size(); ++i) {
        if (!report.critical.closed_form_real[i]) continue;
        const double dev =
            nearest_dev(report.critical.closed_form_s[i], report.critical.numeric_s);
        if (std::isnan(dev)) {
            report.critical_max_abs_dev_s = k_nan;
        } else if (!std::isnan(report.critical_max_abs_dev_s)) {
            report.critical_max_abs_dev_s =
                std::max(report.critical_max_abs_dev_s, dev);
        }
    }

    report.crossings = threshold_crossings_n2(scenario, separation_m, cth_bits);

    const std::array<double, 2> offsets = {0.0, separation_m};
    const auto outage = outage_report(scenario, offsets, cth_bits);
    report.otr_numeric = outage.otr;
    const auto [t_start, t_end] = observation_window(scenario);
    for (const auto& interval : outage.intervals) {
        if (interval.t_minus_s != t_start) {
            report.numeric_crossings_s.push_back(interval.t_minus_s);
        }
        if (interval.t_plus_s != t_end) {
            report.numeric_crossings_s.push_back(interval.t_plus_s);
        }
    }
    std::sort(report.numeric_crossings_s.begin(), report.numeric_crossings_s.end());

    report.crossing_max_abs_dev_s = report.crossings.empty() ? 0.0 : k_nan;
    report.crossing_max_residual_bits = 0.0;
    for (const auto& crossing : report.crossings) {
        report.crossing_max_residual_bits =
            std::max(report.crossing_max_residual_bits, crossing.residual_bits);
        const double dev = nearest_dev(crossing.time_s, report.numeric_crossings_s);
        if (std::isnan(report.crossing_max_abs_dev_s)) {
            report.crossing_max_abs_dev_s = dev;
        } else if (!std::isnan(dev)) {
            report.crossing_max_abs_dev_s =
                std::max(report.crossing_max_abs_dev_s, dev);
        }
    }

    try {
        report.otr_closed = otr_closed_form_n2(scenario, separation_m, cth_bits);
        report.otr_closed_in_regime = true;
        report.otr_abs_dev = std::abs(report.otr_closed - report.otr_numeric);
    } catch (const regime_error&) {
        report.otr_closed = k_nan;
        report.otr_closed_in_regime = false;
        report.otr_abs_dev = k_nan;
    }
    try {
        report.otr_closed_natural =
            otr_closed_form_n2(scenario, separation_m, cth_bits, true);
    } catch (const regime_error&) {
        report.otr_closed_natural = k_nan;
    }
    return report;
}

}  // namespace hstlab

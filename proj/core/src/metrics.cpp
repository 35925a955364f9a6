#include "hstlab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hstlab/channel.hpp"
#include "hstlab/errors.hpp"

namespace hstlab {

namespace {

// Uniform grid over [a, b] with both endpoints included and spacing <= the
// requested step.
int interval_count(double span, double step) {
    return std::max(1, static_cast<int>(std::ceil(span / step - 1e-12)));
}

double bisect_crossing(const Scenario& scenario, std::span<const double> offsets,
                       double threshold, double lo, double hi, bool lo_below,
                       double tol) {
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const bool mid_below = capacity_at(scenario, offsets, mid) < threshold;
        if (mid_below == lo_below) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double default_scan_step_s(const Scenario& scenario) {
    return scenario.window_duration_s() / 12000.0;
}

double simpson_integrate(const std::function<double(double)>& f, double a,
                         double b, double rel_tol, int refinement_cap) {
    if (!(rel_tol > 0.0) || rel_tol > 1e-3) {
        throw invalid_parameter_error("rel_tol must lie in (0, 1e-3]");
    }
    int n = 16;
    double h = (b - a) / n;
    const double edge = f(a) + f(b);
    double even_sum = 0.0;
    for (int i = 2; i < n; i += 2) even_sum += f(a + i * h);
    double odd_sum = 0.0;
    for (int i = 1; i < n; i += 2) odd_sum += f(a + i * h);
    double estimate = h / 3.0 * (edge + 2.0 * even_sum + 4.0 * odd_sum);
    double previous = std::numeric_limits<double>::quiet_NaN();

    for (int refinement = 0; refinement < refinement_cap; ++refinement) {
        even_sum += odd_sum;
        n *= 2;
        h *= 0.5;
        odd_sum = 0.0;
        for (int i = 1; i < n; i += 2) odd_sum += f(a + i * h);
        previous = estimate;
        estimate = h / 3.0 * (edge + 2.0 * even_sum + 4.0 * odd_sum);
        if (std::abs(estimate - previous) < rel_tol * std::abs(estimate)) {
            return estimate;
        }
    }
    throw convergence_error(
        "quadrature did not reach rel_tol " + std::to_string(rel_tol) + " within " +
            std::to_string(refinement_cap) + " refinements",
        estimate, previous);
}

CapacityTrace sample_trace(const Scenario& scenario,
                           std::span<const double> offsets_m,
                           double sample_step_s) {
    scenario.validate();
    if (offsets_m.empty()) {
        throw invalid_parameter_error("deployment has no antennas");
    }
    const auto [a, b] = observation_window(scenario);
    const double span = b - a;
    if (!(sample_step_s > 0.0) || sample_step_s > span / 10.0) {
        throw invalid_parameter_error("sample step must lie in (0, T/10]");
    }
    const int n = interval_count(span, sample_step_s);
    const double h = span / n;

    CapacityTrace trace;
    trace.sample_step_s = h;
    trace.times_s.resize(n + 1);
    trace.capacities_bits.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double t = (i == n) ? b : a + i * h;
        trace.times_s[i] = t;
        trace.capacities_bits[i] = capacity_at(scenario, offsets_m, t);
    }
    return trace;
}

CapacityTrace sample_trace(const Scenario& scenario, const Deployment& deployment,
                           double sample_step_s) {
    return sample_trace(scenario, std::span<const double>(deployment.offsets_m),
                        sample_step_s);
}

double service_amount(const Scenario& scenario, std::span<const double> offsets_m,
                      double rel_tol) {
    scenario.validate();
    if (offsets_m.empty()) {
        throw invalid_parameter_error("deployment has no antennas");
    }
    const auto [a, b] = observation_window(scenario);
    return simpson_integrate(
        [&](double t) { return capacity_at(scenario, offsets_m, t); }, a, b,
        rel_tol);
}

double service_amount(const Scenario& scenario, const Deployment& deployment,
                      double rel_tol) {
    return service_amount(scenario, std::span<const double>(deployment.offsets_m),
                          rel_tol);
}

OutageReport outage_report(const Scenario& scenario,
                           std::span<const double> offsets_m,
                           double threshold_bits, double scan_step_s,
                           double refine_tol_s) {
    scenario.validate();
    if (offsets_m.empty()) {
        throw invalid_parameter_error("deployment has no antennas");
    }
    if (!std::isfinite(threshold_bits) || threshold_bits < 0.0) {
        throw invalid_parameter_error("threshold must be >= 0");
    }
    const auto [a, b] = observation_window(scenario);
    const double span = b - a;
    if (scan_step_s <= 0.0) scan_step_s = default_scan_step_s(scenario);
    if (scan_step_s > span / 100.0) {
        throw invalid_parameter_error("scan step must be at most T/100");
    }
    if (refine_tol_s <= 0.0) {
        refine_tol_s = std::min(k_default_refine_tol_s, scan_step_s / 100.0);
    }
    if (refine_tol_s > scan_step_s / 100.0) {
        throw invalid_parameter_error("refine tolerance must lie in (0, scan_step/100]");
    }

    OutageReport report;
    report.threshold_bits = threshold_bits;

    const int n = interval_count(span, scan_step_s);
    const double h = span / n;

    // A sample exactly at the threshold counts as not-below: an isolated
    // touch has zero measure and a genuine crossing still flips the sign on
    // one side of it.
    bool below = capacity_at(scenario, offsets_m, a) < threshold_bits;
    double open_start = a;
    double prev_t = a;
    for (int i = 1; i <= n; ++i) {
        const double t = (i == n) ? b : a + i * h;
        const bool t_below = capacity_at(scenario, offsets_m, t) < threshold_bits;
        if (t_below != below) {
            const double crossing = bisect_crossing(scenario, offsets_m,
                                                    threshold_bits, prev_t, t,
                                                    below, refine_tol_s);
            if (below) {
                report.intervals.push_back({open_start, crossing});
            } else {
                open_start = crossing;
            }
            below = t_below;
        }
        prev_t = t;
    }
    if (below) {
        report.intervals.push_back({open_start, b});
    }

    double total = 0.0;
    for (const auto& interval : report.intervals) total += interval.length_s();
    report.otr = total / scenario.window_duration_s();
    return report;
}

OutageReport outage_report(const Scenario& scenario, const Deployment& deployment,
                           double threshold_bits, double scan_step_s,
                           double refine_tol_s) {
    return outage_report(scenario, std::span<const double>(deployment.offsets_m),
                         threshold_bits, scan_step_s, refine_tol_s);
}

}  // namespace hstlab

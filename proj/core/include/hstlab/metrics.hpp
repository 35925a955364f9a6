#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hstlab/deployment.hpp"
#include "hstlab/scenario.hpp"

namespace hstlab {

/// Capacity sampled on a uniform grid spanning the observation window,
/// both endpoints included.
struct CapacityTrace {
    std::vector<double> times_s;
    std::vector<double> capacities_bits;
    double sample_step_s = 0.0;
};

struct OutageInterval {
    double t_minus_s = 0.0;
    double t_plus_s = 0.0;

    double length_s() const { return t_plus_s - t_minus_s; }
};

/// Maximal sub-threshold intervals (sorted, disjoint, clipped to the
/// window) and their total share of the window duration.
struct OutageReport {
    double threshold_bits = 0.0;
    std::vector<OutageInterval> intervals;
    double otr = 0.0;  // sum of interval lengths / (D/v), in [0, 1]
};

inline constexpr double k_default_service_rel_tol = 1e-8;
inline constexpr int k_quadrature_refinement_cap = 24;
inline constexpr double k_default_refine_tol_s = 1e-7;

/// Default outage scan step: window duration / 12000 (1 ms for a 12 s
/// window), fine enough to resolve features down to ~0.1 m of travel.
double default_scan_step_s(const Scenario& scenario);

/// Composite Simpson quadrature with interval doubling, refined until two
/// successive estimates agree to rel_tol relatively. Throws
/// convergence_error (carrying the last two estimates) after
/// k_quadrature_refinement_cap doublings.
double simpson_integrate(const std::function<double(double)>& f, double a,
                         double b, double rel_tol,
                         int refinement_cap = k_quadrature_refinement_cap);

CapacityTrace sample_trace(const Scenario& scenario,
                           std::span<const double> offsets_m,
                           double sample_step_s);
CapacityTrace sample_trace(const Scenario& scenario, const Deployment& deployment,
                           double sample_step_s);

/// Integral of the instantaneous capacity over the observation window,
/// in bits/Hz (bits/s/Hz integrated over seconds).
double service_amount(const Scenario& scenario, std::span<const double> offsets_m,
                      double rel_tol = k_default_service_rel_tol);
double service_amount(const Scenario& scenario, const Deployment& deployment,
                      double rel_tol = k_default_service_rel_tol);

/// Scans C(t) - threshold for sign changes on a uniform grid, refines each
/// bracketed crossing by bisection to refine_tol, and assembles the
/// sub-threshold intervals. Tangential touches without a sign change have
/// zero measure and are ignored. Non-positive scan_step_s / refine_tol_s
/// select the defaults (window/12000 and min(1e-7 s, scan_step/100)).
OutageReport outage_report(const Scenario& scenario,
                           std::span<const double> offsets_m,
                           double threshold_bits, double scan_step_s = 0.0,
                           double refine_tol_s = 0.0);
OutageReport outage_report(const Scenario& scenario, const Deployment& deployment,
                           double threshold_bits, double scan_step_s = 0.0,
                           double refine_tol_s = 0.0);

}  // namespace hstlab

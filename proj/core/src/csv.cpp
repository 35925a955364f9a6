#include "hstlab/csv.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>

#include "hstlab/channel.hpp"
#include "hstlab/errors.hpp"

namespace hstlab {

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm parts{};
    gmtime_r(&now, &parts);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &parts);
    return buffer;
}

}  // namespace

void write_trace_csv(std::ostream& out, const CapacityTrace& trace,
                     const Scenario* scenario, const Deployment* deployment) {
    const bool per_antenna = scenario != nullptr && deployment != nullptr;
    out << "t_s,capacity_bps_hz";
    if (per_antenna) {
        for (int n = 1; n <= deployment->antenna_count; ++n) {
            out << ",snr_" << n;
        }
    }
    out << '\n';
    for (size_t i = 0; i < trace.times_s.size(); ++i) {
        out << format_double(trace.times_s[i]) << ','
            << format_double(trace.capacities_bits[i]);
        if (per_antenna) {
            const LinkState state =
                link_state_at(*scenario, *deployment, trace.times_s[i]);
            for (double snr : state.snrs) {
                out << ',' << format_double(snr);
            }
        }
        out << '\n';
    }
}

void write_outage_csv(std::ostream& out, const OutageReport& report) {
    out << "t_minus_s,t_plus_s\n";
    for (const auto& interval : report.intervals) {
        out << format_double(interval.t_minus_s) << ','
            << format_double(interval.t_plus_s) << '\n';
    }
    out << "# otr=" << format_double(report.otr) << '\n';
}

void write_sweep_csv(std::ostream& out, const SweepResult& result,
                     const CsvProvenance& provenance) {
    char hash[24];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(provenance.scenario_hash));
    out << "# tool=hst-antenna-lab " << provenance.tool_version << '\n';
    out << "# scenario=fnv1a64:" << hash << '\n';
    out << "# variable=" << to_string(result.spec.variable)
        << " cth_bits=" << format_double(result.spec.cth_bits)
        << " rel_tol=" << format_double(result.spec.service_rel_tol)
        << " scan_step_s=" << format_double(result.spec.scan_step_s)
        << " refine_tol_s=" << format_double(result.spec.refine_tol_s) << '\n';
    if (!provenance.reproducible) {
        out << "# generated=" << utc_timestamp() << '\n';
    }
    out << "x,strategy,service_bits_per_hz_s,otr\n";
    for (const auto& row : result.rows) {
        out << format_double(row.x) << ',' << to_string(row.strategy) << ',';
        if (!std::isnan(row.service)) out << format_double(row.service);
        out << ',';
        if (!std::isnan(row.otr)) out << format_double(row.otr);
        out << '\n';
    }
    for (const auto& reason : result.skipped) {
        out << "# skipped: " << reason << '\n';
    }
}

}  // namespace hstlab

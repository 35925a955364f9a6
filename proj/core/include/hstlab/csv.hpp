#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "hstlab/deployment.hpp"
#include "hstlab/metrics.hpp"
#include "hstlab/scenario.hpp"
#include "hstlab/sweep.hpp"

namespace hstlab {

/// Shortest round-trip decimal form of a double (17 significant digits).
std::string format_double(double value);

/// Provenance block written as comment lines at the top of sweep CSVs.
/// When reproducible is true the timestamp line is suppressed so that
/// identical inputs give byte-identical files.
struct CsvProvenance {
    std::string tool_version;
    uint64_t scenario_hash = 0;
    bool reproducible = false;
};

/// Header `t_s,capacity_bps_hz[,snr_1..snr_N]`, one row per sample.
/// Per-antenna SNR columns are emitted when scenario/deployment are given.
void write_trace_csv(std::ostream& out, const CapacityTrace& trace,
                     const Scenario* scenario = nullptr,
                     const Deployment* deployment = nullptr);

/// Header `t_minus_s,t_plus_s`, one row per interval, then a footer
/// comment line `# otr=<value>`.
void write_outage_csv(std::ostream& out, const OutageReport& report);

/// Provenance comments, header `x,strategy,service_bits_per_hz_s,otr`, one
/// row per non-skipped combination, then `# skipped: ...` comment lines.
/// Fields that were not requested are left empty.
void write_sweep_csv(std::ostream& out, const SweepResult& result,
                     const CsvProvenance& provenance);

}  // namespace hstlab

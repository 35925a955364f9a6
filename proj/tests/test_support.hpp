#pragma once

#include "hstlab/scenario.hpp"

// Baseline scenario used across the suites: 100 m/s train, 200 m long,
// 50 m track offset, 1200 m coverage (a [-6, 6] s window), 0.15 m carrier
// wavelength, 5 dB peak per-antenna SNR, 0.15 bits/s/Hz rate threshold.
inline hstlab::Scenario reference_scenario() {
    hstlab::Scenario s;
    s.speed_mps = 100.0;
    s.train_length_m = 200.0;
    s.min_distance_m = 50.0;
    s.coverage_m = 1200.0;
    s.wavelength_m = 0.15;
    s.antenna_gain = 1.0;
    s.snr0 = hstlab::calibrate_from_max_snr(5.0, 50.0);
    s.rate_threshold_bits = 0.15;
    return s;
}

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "hstlab/channel.hpp"
#include "hstlab/errors.hpp"
#include "hstlab/scenario.hpp"
#include "test_support.hpp"

using namespace hstlab;

TEST_CASE("max-SNR calibration") {
    // 10^(5/10) * 50^2, by direct arithmetic
    CHECK(calibrate_from_max_snr(5.0, 50.0) ==
          doctest::Approx(7905.694150420949).epsilon(1e-13));
    CHECK(calibrate_from_max_snr(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));

    SUBCASE("round-trip: SNR at closest approach recovers the calibrated peak") {
        const double snr0 = calibrate_from_max_snr(5.0, 50.0);
        const double snr_at_d0 = snr0 / (50.0 * 50.0);
        CHECK(snr_at_d0 == doctest::Approx(std::pow(10.0, 0.5)).epsilon(1e-12));
    }

    CHECK_THROWS_AS(calibrate_from_max_snr(5.0, 0.0), invalid_parameter_error);
    CHECK_THROWS_AS(calibrate_from_max_snr(5.0, -1.0), invalid_parameter_error);
    CHECK_THROWS_AS(calibrate_from_max_snr(5.0, std::nan("")), invalid_parameter_error);
}

TEST_CASE("physics calibration") {
    const double four_pi_sq = std::pow(4.0 * std::numbers::pi, 2.0);
    CHECK(calibrate_from_physics(four_pi_sq, 1.0, 1.0, 1.0, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-14));

    SUBCASE("linear in transmit power") {
        const double base = calibrate_from_physics(10.0, 2.0, 0.3, 1e-18, 1.5e4);
        const double doubled = calibrate_from_physics(20.0, 2.0, 0.3, 1e-18, 1.5e4);
        CHECK(doubled == doctest::Approx(2.0 * base).epsilon(1e-14));
    }

    SUBCASE("direct arithmetic spot value") {
        // 10 * 1 * 0.15^2 / ((4*pi)^2 * 10^-17.5 * 15000)
        const double value =
            calibrate_from_physics(10.0, 1.0, 0.15, std::pow(10.0, -17.5), 15000.0);
        CHECK(value == doctest::Approx(30038035831.310863).epsilon(1e-12));
    }

    CHECK_THROWS_AS(calibrate_from_physics(0.0, 1.0, 1.0, 1.0, 1.0),
                    invalid_parameter_error);
    CHECK_THROWS_AS(calibrate_from_physics(1.0, 1.0, 1.0, -2.0, 1.0),
                    invalid_parameter_error);
    CHECK_THROWS_AS(calibrate_from_physics(1.0, 1.0, 1.0, 1.0, 0.0),
                    invalid_parameter_error);
}

TEST_CASE("observation window") {
    Scenario s = reference_scenario();
    auto [t0, t1] = observation_window(s);
    CHECK(t0 == doctest::Approx(-6.0));
    CHECK(t1 == doctest::Approx(6.0));

    s.coverage_m = 2.0 * s.speed_mps;
    auto [u0, u1] = observation_window(s);
    CHECK(u0 == doctest::Approx(-1.0));
    CHECK(u1 == doctest::Approx(1.0));

    s.coverage_m = 600.0;
    s.speed_mps = 50.0;
    auto [w0, w1] = observation_window(s);
    CHECK(w0 == doctest::Approx(-6.0));
    CHECK(w1 == doctest::Approx(6.0));

    SUBCASE("symmetric about zero with duration D/v") {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> speed(1.0, 400.0);
        std::uniform_real_distribution<double> coverage(10.0, 1e5);
        for (int i = 0; i < 50; ++i) {
            Scenario r = reference_scenario();
            r.speed_mps = speed(rng);
            r.coverage_m = coverage(rng);
            auto [a, b] = observation_window(r);
            CHECK(a == -b);
            CHECK(b - a ==
                  doctest::Approx(r.coverage_m / r.speed_mps).epsilon(1e-12));
        }
    }
}

TEST_CASE("scenario validation") {
    Scenario s = reference_scenario();
    CHECK_NOTHROW(s.validate());

    SUBCASE("zero threshold is allowed") {
        s.rate_threshold_bits = 0.0;
        CHECK_NOTHROW(s.validate());
    }
    SUBCASE("negative threshold is not") {
        s.rate_threshold_bits = -0.1;
        CHECK_THROWS_AS(s.validate(), invalid_parameter_error);
    }
    SUBCASE("non-positive core fields") {
        s.speed_mps = 0.0;
        CHECK_THROWS_AS(s.validate(), invalid_parameter_error);
    }
    SUBCASE("non-finite fields") {
        s.coverage_m = std::numeric_limits<double>::infinity();
        CHECK_THROWS_AS(s.validate(), invalid_parameter_error);
    }
}

TEST_CASE("capacity depends only on the calibrated snr0, not the path to it") {
    Scenario via_snr = reference_scenario();

    // Solve the link budget for the transmit power that reproduces the same
    // snr0, then calibrate through the physics route.
    Scenario via_physics = reference_scenario();
    const double four_pi_sq = std::pow(4.0 * std::numbers::pi, 2.0);
    const double noise = 1e-18;
    const double bandwidth = 15000.0;
    const double tx_power = via_snr.snr0 * four_pi_sq * noise * bandwidth /
                            (via_physics.antenna_gain * via_physics.wavelength_m *
                             via_physics.wavelength_m);
    via_physics.snr0 = calibrate_from_physics(tx_power, via_physics.antenna_gain,
                                              via_physics.wavelength_m, noise,
                                              bandwidth);
    CHECK(via_physics.snr0 == doctest::Approx(via_snr.snr0).epsilon(1e-12));

    const std::array<double, 2> offsets = {0.0, 200.0};
    for (double t : {-6.0, -1.5, 0.0, 0.7, 1.0, 4.2, 6.0}) {
        CHECK(capacity_at(via_physics, offsets, t) ==
              doctest::Approx(capacity_at(via_snr, offsets, t)).epsilon(1e-12));
    }
}

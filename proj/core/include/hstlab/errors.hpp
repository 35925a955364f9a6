#pragma once

#include <stdexcept>
#include <string>

namespace hstlab {

// Base class for all library errors. The CLI maps these onto exit codes:
// invalid_parameter_error -> 2, spacing_violation_error and regime_error -> 3,
// convergence_error -> 4.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class invalid_parameter_error : public error {
public:
    using error::error;
};

// Placement constraint failures: half-wavelength rule, offsets outside the
// train, group overlap, delta outside its admissible range.
class spacing_violation_error : public error {
public:
    using error::error;
};

// A closed-form expression was requested outside its validity regime.
class regime_error : public error {
public:
    using error::error;
};

// Quadrature failed to reach the requested tolerance within the refinement
// cap. Carries the last two estimates.
class convergence_error : public error {
public:
    convergence_error(const std::string& what, double last, double previous)
        : error(what), last_estimate(last), previous_estimate(previous) {}

    double last_estimate;
    double previous_estimate;
};

}  // namespace hstlab

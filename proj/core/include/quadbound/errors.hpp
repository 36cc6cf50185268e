#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quadbound {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input text could not be parsed. `position` is the 0-based character
// offset of the first offending character (== input length for unexpected
// end of input).
struct ParseError : Error {
    ParseError(std::size_t pos, const std::string& message)
        : Error(message + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

// Evaluation left the real domain (ln of a non-positive value, division by
// zero, 0 raised to a negative power, non-finite result).
struct DomainError : Error {
    using Error::Error;
};

// The supplied derivative bounds are inconsistent with the endpoint data:
// (g(b)-g(a))/(b-a) lies outside [lo, hi] beyond the allowed slack.
struct MeanSlopeOutOfRange : Error {
    using Error::Error;
};

// Evaluation point outside the admissible set of the requested case.
struct PointOutOfRange : Error {
    using Error::Error;
};

// Steffensen/Hayashi input checks.
struct NotNonincreasing : Error {
    using Error::Error;
};
struct RangeViolation : Error {
    using Error::Error;
};
struct LambdaOutOfRange : Error {
    using Error::Error;
};

// Adaptive integrator exhausted its recursion depth.
struct NoConvergence : Error {
    using Error::Error;
};

// Family sampler was asked for something it cannot build.
struct BadFamilyParameters : Error {
    using Error::Error;
};

}  // namespace quadbound

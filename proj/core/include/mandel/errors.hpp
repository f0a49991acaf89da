#pragma once

#include <stdexcept>
#include <string>

namespace mandel {

// Base class for all library errors so callers can catch one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed textual input: angle strings, tuning words, config files.
struct FormatError : Error {
    using Error::Error;
};

// Mathematically out-of-domain request (zero denominator, non-periodic angle
// passed to a periodic-only operation, ...).
struct DomainError : Error {
    using Error::Error;
};

// An edge configuration failed validation, or an internally constructed map
// violated a structural invariant.
struct ConfigError : Error {
    using Error::Error;
};

// The digit orbit of the piecewise map did not close up within the cap.
struct NoCycleError : Error {
    using Error::Error;
};

// A numeric routine (Newton solver, ray tracer) failed to converge or
// produced an unusable result.
struct SolverError : Error {
    using Error::Error;
};

} // namespace mandel

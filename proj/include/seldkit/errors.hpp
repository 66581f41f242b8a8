#pragma once

#include <stdexcept>

namespace seld {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed binary input (bad container, bad magic, truncated payload).
struct FormatError : Error {
    using Error::Error;
};

// Well-formed container with an encoding this library does not handle.
struct UnsupportedError : Error {
    using Error::Error;
};

// Text input that does not parse (CSV, scene spec, config file).
struct ParseError : Error {
    using Error::Error;
};

// A value outside its documented domain.
struct RangeError : Error {
    using Error::Error;
};

// Invalid configuration or violated precondition.
struct ConfigError : Error {
    using Error::Error;
};

// Numerical failure (non-convergence, non-Hermitian input).
struct NumericError : Error {
    using Error::Error;
};

// Estimation impossible on the given data (e.g. no single-source bins).
struct EstimateError : Error {
    using Error::Error;
};

// Output-side I/O failure.
struct WriteError : Error {
    using Error::Error;
};

}  // namespace seld

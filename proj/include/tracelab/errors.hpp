#pragma once

#include <stdexcept>
#include <string>

namespace tracelab {

// Common base so callers can catch everything from this library at once.
struct TraceLabError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input outside the mathematical domain of an operation.
struct DomainError : TraceLabError {
    using TraceLabError::TraceLabError;
};

// Division by zero and friends.
struct ArithmeticError : TraceLabError {
    using TraceLabError::TraceLabError;
};

// An enumeration-backed operation would exceed the configured size bound.
struct CapacityError : TraceLabError {
    using TraceLabError::TraceLabError;
};

// A level above the configured level bound was requested.
struct LevelError : TraceLabError {
    using TraceLabError::TraceLabError;
};

// Invalid configuration (e.g. a trivial character where a nontrivial one is required).
struct ConfigError : TraceLabError {
    using TraceLabError::TraceLabError;
};

// The requested group presentation does not exist in this characteristic.
struct PresentationError : TraceLabError {
    using TraceLabError::TraceLabError;
};

// A truncation or exponent-denominator budget was exhausted.
struct PrecisionError : TraceLabError {
    using TraceLabError::TraceLabError;
};

} // namespace tracelab

#pragma once

#include <stdexcept>
#include <string>

namespace abacmtd {

// Base class for every error the library raises.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid argument, threshold, or configuration value. The CLI maps these
// (and the input-shaped errors below) to exit code 2.
struct ParameterError : Error {
    using Error::Error;
};

// Missing or unreadable file.
struct IoError : Error {
    using Error::Error;
};

// Structurally bad input: header mismatch, malformed row, unknown column.
struct SchemaError : Error {
    using Error::Error;
};

// Unknown subject/object id in the attribute repository. Signals a
// misconfigured repository, not an access denial.
struct LookupError : Error {
    using Error::Error;
};

// Administrative swap or rotation built against a superseded policy
// version. The CLI maps this to exit code 3.
struct StaleVersionError : Error {
    using Error::Error;
};

// Mining over a dataset with zero rows where a ratio is requested.
struct EmptyDatasetError : ParameterError {
    using ParameterError::ParameterError;
};

// confidence(X, Y) with support(X) = 0; callers discard the rule instead
// of treating the value as 0.
struct UndefinedConfidenceError : Error {
    using Error::Error;
};

// The honey generator's final population has no member inside the
// configured similarity band.
struct BandUnreachableError : Error {
    using Error::Error;
};

}  // namespace abacmtd

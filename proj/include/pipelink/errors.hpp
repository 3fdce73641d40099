#pragma once

#include <stdexcept>
#include <string>

namespace pipelink {

/// Parameter or precondition violation: the caller handed us something that
/// can never be valid (negative diffusivity, empty bit pattern, malformed
/// CSV row, ...). The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The request is well-formed but falls outside the regime the model is
/// calibrated for (capture statistics with nonzero drift, pathloss prediction
/// for open or free-space endpoints, ...). Also exit code 2 at the CLI.
class UnsupportedRegimeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// A trace has no detectable pulse: its maximum does not stand out from the
/// baseline. This mirrors a below-sensitivity measurement, not a bug, so the
/// CLI reports it separately (exit code 3 unless --no-signal-ok).
class NoSignalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A trace contains a pulse but ends before the post-peak -3 dB crossing, so
/// the delay spread cannot be measured from it. Exit code 2.
class IncompleteTraceError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// File or stream failure (cannot open/read/write). Exit code 4.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pipelink

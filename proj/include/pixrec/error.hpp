#pragma once

#include <stdexcept>
#include <string>

namespace pixrec {

/// Base for all library failures that callers may want to catch as a group.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Precondition on the input shape (e.g. genericity, nonempty column).
struct PreconditionError : Error {
    using Error::Error;
};

/// Input text (scene JSON, PBM) could not be parsed.
struct ParseError : Error {
    using Error::Error;
};

/// An internal consistency check failed or an iterative procedure did not
/// settle within its cap.
struct ComputationError : Error {
    using Error::Error;
};

}  // namespace pixrec

#pragma once

#include <stdexcept>

namespace zefc {

// Base of every error raised by the library. The CLI maps the subclasses
// onto its exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: bad documents, inconsistent tables, bad arguments.
class ValidationError : public Error {
public:
    using Error::Error;
};

// An enumeration or materialization would exceed a configured cap.
class CapExceeded : public Error {
public:
    using Error::Error;
};

// A scheme or cover failed a zero-error / coloring check.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

} // namespace zefc

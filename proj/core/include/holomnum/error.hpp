#pragma once

#include <stdexcept>
#include <string>

namespace holomnum {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The computation could not be certified at the current working precision
/// (a pivot or denominator ball contains zero, a tail bound did not validate).
/// Callers are expected to retry with more precision or smaller steps.
class PrecisionError : public Error {
public:
    using Error::Error;
};

/// The tail majorant cannot validate a series evaluated this far from its
/// expansion point, whatever the truncation order; the step must be split.
class StepTooLargeError : public PrecisionError {
public:
    using PrecisionError::PrecisionError;
};

/// Mathematical domain violation: log of zero, branch-cut straddle,
/// path through a singular point, irregular singular endpoint.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Input that is valid but outside what this library handles
/// (e.g. non-rational local exponents).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

}  // namespace holomnum

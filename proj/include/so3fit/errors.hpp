#pragma once

#include <stdexcept>
#include <string>

namespace so3fit {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument violated a documented precondition (out-of-range value, non-unit axis, ...).
class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

/// A point set contains duplicate rotations (separation distance zero).
class DegenerateSetError : public Error {
public:
    using Error::Error;
};

/// Requested Wigner degree exceeds the configured cap.
class UnsupportedDegreeError : public Error {
public:
    using Error::Error;
};

/// Center set is not unisolvent for the required polynomial space.
class UnisolvencyError : public Error {
public:
    using Error::Error;
};

/// A linear system is too ill-conditioned to solve reliably.
class ConditioningError : public Error {
public:
    using Error::Error;
};

/// Too few centers inside a ball to support the requested polynomial precision.
class DensityError : public Error {
public:
    using Error::Error;
};

/// A file or record could not be parsed.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A parsed record fails a semantic validity check.
class ValidationError : public Error {
public:
    using Error::Error;
};

} // namespace so3fit

#pragma once

#include <stdexcept>
#include <string>

namespace fracspec {

/// Precondition violations on public entry points.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Base of every typed numerical failure. The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Series summation exhausted its term budget before the stopping rule fired.
class NonConvergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class QuadratureFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// No sign change in a root bracket even after endpoint nudging.
class BracketFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ToleranceNotReached : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Breakdown of the tridiagonal elimination (zero pivot).
class SingularSystem : public NumericalError {
public:
    using NumericalError::NumericalError;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
    if (!condition) {
        throw InvalidArgument(message);
    }
}

}  // namespace detail
}  // namespace fracspec

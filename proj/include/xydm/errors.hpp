#pragma once

#include <stdexcept>
#include <string>

namespace xydm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user input (parameter ranges, grid shapes, file formats).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature could not meet its tolerance within the subdivision budget.
class NonConvergence : public Error {
public:
    using Error::Error;
};

/// A density matrix failed its trace/positivity checks.
class InvalidState : public Error {
public:
    using Error::Error;
};

class NotXState : public Error {
public:
    using Error::Error;
};

/// Jensen-Shannon radicand was significantly negative.
class NumericalBreakdown : public Error {
public:
    using Error::Error;
};

/// No critical-point signature above threshold in the scanned window.
class NoSignal : public Error {
public:
    using Error::Error;
};

/// Iterative eigensolver failed to converge.
class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

}  // namespace xydm

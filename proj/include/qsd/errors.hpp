#pragma once

#include <stdexcept>
#include <string>

namespace qsd {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the supported domain (A <= 0, x outside [0, A], ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Gamma or digamma evaluated at a nonpositive integer.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Result magnitude exceeds the double range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Hypergeometric denominator parameter hits a nonpositive integer before
/// the series terminates.
class DenominatorPoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Whittaker M with -2b a positive integer.
class UndefinedError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Formula requested outside the parameter regime where it is defined
/// (for example a real-order special value while xi is imaginary).
class RegimeError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Any iterative procedure that ran out of iterations or terms.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

class NonConvergenceError : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

/// Eigencondition has no sign change on the (widened) bracket.
class BracketError : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

/// Adaptive quadrature stopped before meeting its tolerance. Carries the
/// best estimate and its error bound.
class ToleranceNotMetError : public ConvergenceError {
public:
    ToleranceNotMetError(const std::string& what, double estimate, double error_bound)
        : ConvergenceError(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

/// A computed quantity violated an invariant it must satisfy by
/// construction (realness, cdf range); indicates a kernel defect.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace qsd

#pragma once

#include <stdexcept>
#include <string>

namespace qes {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation (imaginary gamma,
/// negative radicand, index out of range, ...).
class DomainError : public Error
{
  public:
    using Error::Error;
};

/// Overlap matrix lost positive definiteness at working precision.
class ConditioningError : public Error
{
  public:
    using Error::Error;
};

/// An iterative kernel hit its iteration cap.
class ConvergenceError : public Error
{
  public:
    using Error::Error;
};

/// A requested point lies outside the sampled parameter range.
class CoverageError : public Error
{
  public:
    using Error::Error;
};

/// A self-consistency or closed-form equation has no admissible solution.
class NoSolutionError : public Error
{
  public:
    using Error::Error;
};

} // namespace qes

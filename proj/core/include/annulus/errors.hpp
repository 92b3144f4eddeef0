#pragma once

#include <stdexcept>
#include <string>

namespace annulus {

/// Argument outside the mathematical or supported domain of an operation.
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A value that exists mathematically but does not fit in a double
/// (an input too large or too small for the representable range).
class RangeError : public DomainError {
public:
  explicit RangeError(const std::string& what) : DomainError(what) {}
};

/// Evaluation of a derivative at a point where it is unbounded.
class SingularityError : public DomainError {
public:
  explicit SingularityError(const std::string& what) : DomainError(what) {}
};

/// The operation needs a property the geometry does not carry
/// (e.g. slanted counting without a rational cusp slope).
class UnsupportedConfiguration : public std::invalid_argument {
public:
  explicit UnsupportedConfiguration(const std::string& what)
      : std::invalid_argument(what) {}
};

/// An iterative method failed to converge within its budget.
class ConvergenceError : public std::runtime_error {
public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace annulus

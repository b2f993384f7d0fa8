#pragma once

#include <stdexcept>
#include <string>

namespace graphon {

// Invalid input or a request outside the supported domain. The CLI maps the
// whole family to exit status 2.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotNegativeDefinite : public DomainError {
 public:
  using DomainError::DomainError;
};

class DegeneratePode : public DomainError {
 public:
  using DomainError::DomainError;
};

// A numerical procedure failed to produce an admissible answer. The CLI maps
// the whole family to exit status 3.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoRootInBracket : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

class OutOfDomain : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

class MaxIterExceeded : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

class RegionViolation : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

class ConstraintInfeasible : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

}  // namespace graphon

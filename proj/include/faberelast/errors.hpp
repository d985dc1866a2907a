#pragma once

#include <stdexcept>
#include <string>

namespace faberelast {

// Evaluation outside the closed exterior disk |w| >= 1, or a non-unit conformal radius.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Division by a vanishing map derivative.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// mu <= 0 or lambda + mu <= 0.
class ConvexityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Base for the failures the CLI reports as solver degeneracy (exit 3).
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularSystemError : public DegeneracyError {
 public:
  using DegeneracyError::DegeneracyError;
};

class DegenerateRotationError : public DegeneracyError {
 public:
  using DegeneracyError::DegeneracyError;
};

class UnivalenceError : public DegeneracyError {
 public:
  using DegeneracyError::DegeneracyError;
};

// The loading/map combination needs more Faber modes than the truncation order holds.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Naive boundary quadrature requested too close to the boundary.
class ProximityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace faberelast

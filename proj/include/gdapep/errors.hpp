// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace gdapep {

// Base class for recoverable input/domain failures.  The CLI maps anything
// derived from DomainError to exit code 3; flag parsing errors are exit 2.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid smoothness/convexity constants (mu > L, negative moduli, ...).
class ParameterError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Step length outside its admissible open interval.
class StepRangeError : public DomainError {
 public:
  StepRangeError(double t, double upper, const std::string& context)
      : DomainError(context + ": step t=" + std::to_string(t) +
                    " outside the valid interval (0, " +
                    std::to_string(upper) + ")"),
        t_(t),
        upper_(upper) {}

  double t() const { return t_; }
  double upper() const { return upper_; }

 private:
  double t_;
  double upper_;
};

// Vector/matrix shape mismatch between an oracle and its arguments.
class DimensionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Requested capability (projection, closed-form solution set, ...) is not
// available for the given oracle.
class UnsupportedOracleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An estimator received no usable sample points.
class EmptySampleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A GDA run exceeded the divergence guard.
class DivergedError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Malformed instance/config files.
class ParseError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace gdapep

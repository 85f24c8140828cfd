// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace lcq {

/// Base class for all library failures. Subclasses name the failure mode so
/// callers (and the CLI exit-code mapping) can react without string matching.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operands belong to different field kinds (or masses differ).
class KindMismatchError : public Error {
public:
  using Error::Error;
};

/// Quadrature failed to converge within its node budget. Carries the best
/// available estimate and the last observed error so callers can still
/// inspect the value.
class AccuracyError : public Error {
public:
  AccuracyError(const std::string& msg, std::complex<double> best, double err)
      : Error(msg), best_estimate(best), abs_error(err) {}
  std::complex<double> best_estimate;
  double abs_error;
};

/// State has zero or non-finite norm.
class DegenerateStateError : public Error {
public:
  using Error::Error;
};

/// Inputs are (numerically) linearly dependent.
class DependenceError : public Error {
public:
  using Error::Error;
};

class InvalidMassError : public Error {
public:
  using Error::Error;
};

/// Polarization basis requested at k = 0.
class UndefinedDirectionError : public Error {
public:
  using Error::Error;
};

/// Integrand not integrable near k = 0 under the 1/2|k| measure.
class DivergenceError : public Error {
public:
  using Error::Error;
};

/// Smooth kernel parts requested exactly on the light cone; the on-cone
/// content lives in the symbolic delta coefficient.
class OnConeError : public Error {
public:
  using Error::Error;
};

class UndefinedAsymptoticError : public Error {
public:
  using Error::Error;
};

class SuperluminalError : public Error {
public:
  using Error::Error;
};

class EmptySupportError : public Error {
public:
  using Error::Error;
};

/// A stated operation precondition does not hold for the given inputs.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// A Gram matrix fell outside the [0, I] band beyond tolerance.
class ModelViolationError : public Error {
public:
  using Error::Error;
};

/// Too few above-floor samples to fit a decay tail.
class FitWindowError : public Error {
public:
  using Error::Error;
};

/// Requested tail threshold lies below the quadrature noise floor. Carries
/// the smallest achievable value.
class FloorError : public Error {
public:
  FloorError(const std::string& msg, double achievable)
      : Error(msg), achievable_minimum(achievable) {}
  double achievable_minimum;
};

/// Operation not available for this state representation.
class UnsupportedError : public Error {
public:
  using Error::Error;
};

/// Configuration / serialized document violates its schema. Carries the
/// offending field path in the message; the CLI maps this family to exit
/// code 2 (everything else numeric maps to 3).
class SchemaError : public Error {
public:
  using Error::Error;
};

}  // namespace lcq

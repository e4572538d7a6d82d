#pragma once

#include <stdexcept>
#include <string>

namespace saddletip {

// Violated operation precondition (bad argument, malformed config).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested analysis does not apply in this parameter regime
// (no fold found, no root bracket, branch out of range, ...).
class RegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bistable branch overlap lost: the oscillating upper branch can no longer
// coexist with the lower one. This is a signal, not a numerical failure.
class HysteresisLossError : public RegimeError {
 public:
  using RegimeError::RegimeError;
};

// Evaluation too close to a pole of -Ai'/Ai. The pole location is the
// tipping signature, so it is carried along.
class PoleError : public std::domain_error {
 public:
  PoleError(const std::string& msg, double nearest_zero_estimate)
      : std::domain_error(msg), nearest_zero(nearest_zero_estimate) {}
  double nearest_zero;
};

// Integration produced a non-finite state. Carries the last valid sample.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& msg, double t, double drift)
      : std::runtime_error(msg), last_time(t), last_drift(drift) {}
  double last_time;
  double last_drift;
};

}  // namespace saddletip

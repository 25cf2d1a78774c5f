#ifndef SPINWAVE_ERROR_HPP
#define SPINWAVE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace spinwave {

//! Invalid physical or numerical parameter. `field()` names the offending
//! quantity with a dotted path (e.g. "chain.N") so front ends can report it.
class ParameterError : public std::invalid_argument {
 public:
  ParameterError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

//! Requested dense state space exceeds the oracle cap.
class StateSpaceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

//! The transport solve has no well-conditioned solution at the requested time.
class NoSolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

//! Adaptive integrator could not meet its local error bound.
class StepSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spinwave

#endif

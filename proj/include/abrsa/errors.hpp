#pragma once

#include <stdexcept>
#include <string>

namespace abrsa {

// Invalid parameters are reported as std::invalid_argument. The types below
// are failures of an otherwise valid computation.

class engine_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature exhausted its evaluation budget before reaching the
/// requested tolerance.
class quadrature_error : public engine_error {
 public:
  quadrature_error(const std::string& what, double estimate, double error_estimate)
      : engine_error(what), estimate_(estimate), error_estimate_(error_estimate) {}

  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

/// Exhaustive enumeration would exceed the supported lattice size.
class size_cap_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace abrsa

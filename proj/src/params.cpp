#include "abrsa/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace abrsa {

namespace {

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

ModelParams::ModelParams(double alpha, double t) : alpha_(alpha), t_(t) {
  if (!in_unit_interval(alpha)) {
    throw std::invalid_argument("alpha must lie in [0,1], got " + std::to_string(alpha));
  }
  if (!in_unit_interval(t)) {
    throw std::invalid_argument("t must lie in [0,1], got " + std::to_string(t));
  }
}

DerivedParams derive(const ModelParams& params) {
  if (!params.interior()) {
    throw std::domain_error("gamma/theta require 0 < alpha < 1");
  }
  const double a = params.alpha();
  const double b = params.beta();
  return {std::sqrt(a * b), std::sqrt(a / b)};
}

DensityTriple::DensityTriple(double rho_a, double rho_b, double rho_x)
    : rho_a_(rho_a), rho_b_(rho_b), rho_x_(rho_x) {
  if (!in_unit_interval(rho_a) || !in_unit_interval(rho_b) || !in_unit_interval(rho_x)) {
    throw std::invalid_argument("density components must lie in [0,1]");
  }
  if (std::abs(rho_a + rho_b + rho_x - 1.0) > 1e-12) {
    throw std::invalid_argument("densities must sum to 1");
  }
}

}  // namespace abrsa

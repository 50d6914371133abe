#pragma once

#include <cstdint>

namespace abrsa {

enum class Species : std::uint8_t { A, B };

/// Deposition probability of species A and the process time, both in [0,1].
/// beta = 1 - alpha is always derived, never stored.
class ModelParams {
 public:
  /// Throws std::invalid_argument if either value is outside [0,1] or NaN.
  ModelParams(double alpha, double t);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return 1.0 - alpha_; }
  double t() const noexcept { return t_; }

  bool interior() const noexcept { return alpha_ > 0.0 && alpha_ < 1.0; }

  /// The same time with the species swapped (alpha -> 1 - alpha).
  ModelParams swapped() const { return ModelParams(1.0 - alpha_, t_); }

 private:
  double alpha_;
  double t_;
};

/// gamma = sqrt(alpha*beta), theta = sqrt(alpha/beta). Only defined for
/// alpha strictly inside (0,1).
struct DerivedParams {
  double gamma;
  double theta;
};

/// Throws std::domain_error unless 0 < alpha < 1.
DerivedParams derive(const ModelParams& params);

/// Site densities of A, B and empty sites. Components lie in [0,1] and sum to
/// one within 1e-12.
class DensityTriple {
 public:
  /// Throws std::invalid_argument if a component is outside [0,1] or the sum
  /// is off by more than 1e-12.
  DensityTriple(double rho_a, double rho_b, double rho_x);

  double rho_a() const noexcept { return rho_a_; }
  double rho_b() const noexcept { return rho_b_; }
  double rho_x() const noexcept { return rho_x_; }

 private:
  double rho_a_;
  double rho_b_;
  double rho_x_;
};

}  // namespace abrsa

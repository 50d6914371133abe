#pragma once

#include <cstdint>
#include <functional>

namespace abrsa {

struct QuadratureResult {
  double value;
  double error_estimate;
  std::uint64_t evaluations;
};

inline constexpr std::uint64_t kDefaultQuadratureBudget = 1'000'000;

/// Adaptive Simpson quadrature with Richardson correction on [lower, upper].
/// Subintervals are accepted once their share of abs_tol is met; the shares
/// add up to abs_tol over the whole interval.
///
/// Throws std::invalid_argument for a non-positive tolerance or an inverted
/// interval, and quadrature_error if more than max_evaluations integrand calls
/// would be needed.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lower,
                                    double upper, double abs_tol,
                                    std::uint64_t max_evaluations = kDefaultQuadratureBudget);

}  // namespace abrsa

#pragma once

#include <optional>

#include "abrsa/params.hpp"
#include "abrsa/quadrature.hpp"

namespace abrsa {

/// Mean density of A-occupied sites at time t on the infinite chain,
///
///   rho_A = [2 theta + (theta^2 - 1) 2 gamma t + (theta^2 + 1) sinh(2 gamma t)
///            - 2 theta cosh(2 gamma t)] / (4 theta).
///
/// Evaluated in the regrouped form
///   theta (sinh 2x + 2x)/4 + (sinh 2x - 2x)/(4 theta) - sinh^2 x,  x = gamma t,
/// where every term is O(alpha) as alpha -> 0, so no branch switch is needed
/// near the endpoints. alpha = 0 and alpha = 1 return exactly 0 and t.
/// The result is clamped into [0, alpha t].
double closed_form_rho_a(const ModelParams& params);

/// (rho_A, rho_B, rho_X) with rho_B(t; alpha) = rho_A(t; 1 - alpha).
/// Throws std::logic_error if 1 - rho_A - rho_B < -1e-12.
DensityTriple density_triple(const ModelParams& params);

/// The integrand (sqrt(theta) cosh u - sinh(u)/sqrt(theta))^2.
double rho_a_integrand(const DerivedParams& derived, double u);

/// Numerical integral of rho_a_integrand over [0, gamma t]. Requires
/// 0 < alpha < 1 (std::domain_error) and abs_tol >= 1e-14
/// (std::invalid_argument); throws quadrature_error on budget exhaustion.
QuadratureResult integral_rho_a(const ModelParams& params, double abs_tol);

/// Time derivative gamma (sqrt(theta) cosh(gamma t) - sinh(gamma t)/sqrt(theta))^2.
/// The endpoint limits are 0 (alpha = 0) and 1 (alpha = 1).
double rho_a_rate(const ModelParams& params);

/// Taylor polynomial about t = 0, order 1..4:
///   alpha t + alpha(alpha-1) t^2 + alpha(1-alpha)/3 t^3 - alpha^2(1-alpha)^2/3 t^4.
double series_rho_a_small_t(const ModelParams& params, int order);

/// Expansion of rho_A(1; alpha) about alpha = 0, order 1..4:
///   alpha/3 + 2 alpha^2/5 + 52 alpha^3/105 - 88 alpha^4/567.
double series_rho_a_t1_small_alpha(double alpha, int order);

inline constexpr double kContourTolerance = 1e-12;
inline constexpr int kContourMaxIterations = 200;

/// The t in (0,1] with rho_A(t; alpha) = level, or nullopt when
/// rho_A(1; alpha) < level. Requires 0 < alpha <= 1 and 0 < level < 1.
/// Throws engine_error if the solver hits its iteration cap.
std::optional<double> contour_solve_t(double alpha, double level);

/// The alpha in (0,1] with rho_A(1; alpha) = level: where the contour of
/// `level` meets t = 1. Requires 0 < level < 1.
double contour_start_alpha(double level);

}  // namespace abrsa

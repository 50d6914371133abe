#include "abrsa/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "abrsa/errors.hpp"
#include "abrsa/root_finding.hpp"

namespace abrsa {

namespace {

// sinh(y) - y without cancellation for small y.
double sinh_minus_arg(double y) {
  if (std::abs(y) > 1.0) return std::sinh(y) - y;
  const double y2 = y * y;
  double term = y * y2 / 6.0;
  double sum = 0.0;
  for (int k = 1; k < 30 && term != 0.0; ++k) {
    sum += term;
    term *= y2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
  }
  return sum;
}

void require_order(int order) {
  if (order < 1 || order > 4) throw std::invalid_argument("series order must be in 1..4");
}

}  // namespace

double closed_form_rho_a(const ModelParams& params) {
  const double alpha = params.alpha();
  const double t = params.t();
  if (alpha == 0.0 || t == 0.0) return 0.0;
  if (alpha == 1.0) return t;

  const auto [gamma, theta] = derive(params);
  const double x = gamma * t;
  const double y = 2.0 * x;
  const double sh = std::sinh(x);
  const double rho =
      0.25 * theta * (std::sinh(y) + y) + 0.25 * sinh_minus_arg(y) / theta - sh * sh;
  // The exact value lies in [0, alpha t]; clamping only trims rounding.
  return std::clamp(rho, 0.0, alpha * t);
}

DensityTriple density_triple(const ModelParams& params) {
  const double rho_a = closed_form_rho_a(params);
  const double rho_b = closed_form_rho_a(params.swapped());
  double rho_x = 1.0 - rho_a - rho_b;
  if (rho_x < -1e-12) {
    throw std::logic_error("rho_A + rho_B exceeds 1: closed form is inconsistent");
  }
  if (rho_x < 0.0) rho_x = 0.0;
  return DensityTriple(rho_a, rho_b, rho_x);
}

double rho_a_integrand(const DerivedParams& derived, double u) {
  const double root = std::sqrt(derived.theta);
  const double v = root * std::cosh(u) - std::sinh(u) / root;
  return v * v;
}

QuadratureResult integral_rho_a(const ModelParams& params, double abs_tol) {
  if (!(abs_tol >= 1e-14)) throw std::invalid_argument("quadrature tolerance must be >= 1e-14");
  const DerivedParams derived = derive(params);
  return integrate_adaptive([&](double u) { return rho_a_integrand(derived, u); }, 0.0,
                            derived.gamma * params.t(), abs_tol);
}

double rho_a_rate(const ModelParams& params) {
  if (params.alpha() == 0.0) return 0.0;
  if (params.alpha() == 1.0) return 1.0;
  const DerivedParams derived = derive(params);
  return derived.gamma * rho_a_integrand(derived, derived.gamma * params.t());
}

double series_rho_a_small_t(const ModelParams& params, int order) {
  require_order(order);
  const double a = params.alpha();
  const double t = params.t();
  const double ab = a * (1.0 - a);
  const double coeff[4] = {a, -ab, ab / 3.0, -ab * ab / 3.0};
  double sum = 0.0;
  double power = t;
  for (int i = 0; i < order; ++i) {
    sum += coeff[i] * power;
    power *= t;
  }
  return sum;
}

double series_rho_a_t1_small_alpha(double alpha, int order) {
  require_order(order);
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0,1)");
  constexpr double coeff[4] = {1.0 / 3.0, 2.0 / 5.0, 52.0 / 105.0, -88.0 / 567.0};
  double sum = 0.0;
  double power = alpha;
  for (int i = 0; i < order; ++i) {
    sum += coeff[i] * power;
    power *= alpha;
  }
  return sum;
}

std::optional<double> contour_solve_t(double alpha, double level) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("contour alpha must lie in (0,1]");
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("contour level must lie in (0,1)");
  if (alpha == 1.0) return level;
  if (closed_form_rho_a(ModelParams(alpha, 1.0)) < level) return std::nullopt;

  const auto root = find_bracketed_root(
      [&](double t) { return closed_form_rho_a(ModelParams(alpha, t)) - level; }, 0.0, 1.0,
      kContourTolerance, kContourMaxIterations);
  if (!root.converged) throw engine_error("contour solver did not converge");
  return root.x;
}

double contour_start_alpha(double level) {
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("contour level must lie in (0,1)");
  const auto root = find_bracketed_root(
      [&](double alpha) { return closed_form_rho_a(ModelParams(alpha, 1.0)) - level; }, 0.0, 1.0,
      kContourTolerance, kContourMaxIterations);
  if (!root.converged) throw engine_error("contour start solver did not converge");
  return root.x;
}

}  // namespace abrsa

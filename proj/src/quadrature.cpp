#include "abrsa/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "abrsa/errors.hpp"

namespace abrsa {

namespace {

constexpr int kMinDepth = 4;
constexpr int kMaxDepth = 60;

struct Simpson {
  const std::function<double(double)>& f;
  std::uint64_t budget;
  std::uint64_t evaluations = 0;
  double error_sum = 0.0;
  bool exhausted = false;

  double eval(double x) {
    ++evaluations;
    if (evaluations > budget) exhausted = true;
    return f(x);
  }

  // [a,b] with endpoint values fa, fb, midpoint value fm and the Simpson
  // estimate `whole` over the interval.
  double refine(double a, double b, double fa, double fm, double fb, double whole, double tol,
                int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;

    if (exhausted) {
      error_sum += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    if (depth >= kMinDepth && (std::abs(delta) <= 15.0 * tol || depth >= kMaxDepth)) {
      error_sum += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lower,
                                    double upper, double abs_tol,
                                    std::uint64_t max_evaluations) {
  if (!(abs_tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
  if (!(upper >= lower)) throw std::invalid_argument("quadrature interval is inverted");
  if (upper == lower) return {0.0, 0.0, 0};

  Simpson s{f, max_evaluations};
  const double fa = s.eval(lower);
  const double fb = s.eval(upper);
  const double fm = s.eval(0.5 * (lower + upper));
  const double whole = (upper - lower) / 6.0 * (fa + 4.0 * fm + fb);
  const double value = s.refine(lower, upper, fa, fm, fb, whole, abs_tol, 0);

  if (s.exhausted) {
    throw quadrature_error("adaptive quadrature exceeded its evaluation budget", value,
                           s.error_sum);
  }
  return {value, s.error_sum, s.evaluations};
}

}  // namespace abrsa

#pragma once

#include <cmath>
#include <utility>

namespace abrsa {

struct RootResult {
  double x;
  int iterations;
  bool converged;
};

/// Finds a sign change of f in [lower, upper], which must bracket one
/// (f(lower) and f(upper) of opposite sign or zero). Illinois-modified regula
/// falsi, falling back to bisection whenever a step fails to halve the
/// bracket. Stops when the bracket is narrower than x_tol.
template <typename F>
RootResult find_bracketed_root(F&& f, double lower, double upper, double x_tol,
                               int max_iterations = 200) {
  double a = lower;
  double b = upper;
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return {a, 0, true};
  if (fb == 0.0) return {b, 0, true};

  int side = 0;  // which endpoint was kept on the previous step
  bool bisect_next = false;
  for (int it = 1; it <= max_iterations; ++it) {
    const double width = b - a;
    double c;
    if (bisect_next) {
      c = a + 0.5 * width;
    } else {
      c = (a * fb - b * fa) / (fb - fa);
      if (!(c > a && c < b)) c = a + 0.5 * width;
    }
    const double fc = f(c);
    if (fc == 0.0) return {c, it, true};

    if ((fc < 0.0) == (fa < 0.0)) {
      a = c;
      fa = fc;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = c;
      fb = fc;
      if (side == +1) fa *= 0.5;
      side = +1;
    }
    bisect_next = (b - a) > 0.5 * width;
    if (b - a <= x_tol) {
      return {0.5 * (a + b), it, true};
    }
  }
  return {0.5 * (a + b), max_iterations, false};
}

}  // namespace abrsa

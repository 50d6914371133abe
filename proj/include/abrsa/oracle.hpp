#pragma once

#include <cstddef>

#include "abrsa/simulator.hpp"

namespace abrsa {

inline constexpr std::size_t kOracleMaxSites = 12;
inline constexpr int kWindowMaxHalfWidth = 5;

struct OracleProblem {
  std::size_t n_sites = 1;
  Boundary boundary = Boundary::free;
  double alpha = 0.5;
  double t = 1.0;
  std::size_t target_site = 0;

  /// std::invalid_argument for bad values, size_cap_error above 12 sites.
  void validate() const;
};

struct OccupationProbabilities {
  double p_a;
  double p_b;
  double p_x;
};

/// Exact probability that the target site is A / B / empty at time t, by
/// exhaustive enumeration: every subset S of sites attempting before t
/// (weight t^|S| (1-t)^(n-|S|)), every ordering of S (weight 1/|S|!), every
/// type assignment on S (weight alpha^#A beta^#B), each replayed through the
/// deposition rule. Orderings are walked depth-first in lexicographic order;
/// once the target has attempted its state is final, so the remaining
/// orderings and types of that branch are credited in one step.
///
/// Cost grows like |S|! 2^|S|: instant up to 8 sites, seconds at 9, minutes
/// or more beyond.
OccupationProbabilities exact_occupation(const OracleProblem& problem);

struct WindowDensity {
  /// Exact A-probability of the centre of a free path of 2 w + 1 sites.
  double value;
  /// 2 t^{w+1}/(w+1)!: probability that a time-descending chain from the
  /// centre reaches either end of the window. Outside that event the centre
  /// behaves exactly as on the infinite chain, so this bounds
  /// |value - rho_A(t; alpha)|.
  double truncation_note;
};

/// Requires 0 < alpha < 1, t in [0,1] and 1 <= half_width <= 5.
WindowDensity window_density(double alpha, double t, int half_width);

}  // namespace abrsa

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "abrsa/params.hpp"

namespace abrsa {

// Site 0 holds an A particle at time t exactly when one left blocking chain
// C^-_a and one right blocking chain C^+_b occur. The chains are split by the
// parity of their index into the disjoint main events
//   G^{ee}_{j,k} = C^-_{2j+2} & C^+_{2k+2},   G^{oe}_{j,k} = C^-_{2j+1} & C^+_{2k+2},
//   G^{eo}_{j,k} = C^-_{2j+2} & C^+_{2k+1},   G^{oo}_{j,k} = C^-_{2j+1} & C^+_{2k+1},
// and rho_A is the sum of their probabilities over all j, k >= 0.
//
// Along one direction, with times t_0, t_1, ... and types Y_0, Y_1, ...
// (index 0 is the centre site):
//   C_{2k+1}: t > t_0 > ... > t_{2k} < t_{2k+1},  Y = (A,B)^k A
//   C_{2k+2}: t > t_0 > ... > t_{2k+1},           Y = (A,B)^k A A

enum class Parity : std::uint8_t { ee, oe, eo, oo };

inline constexpr Parity kAllParities[4] = {Parity::ee, Parity::oe, Parity::eo, Parity::oo};

std::string_view parity_name(Parity p);

struct EventIndex {
  int j;
  int k;
  Parity parity;
};

/// Γ_{j,k}(m,n) evaluated at x = gamma t.
struct GammaTermSpec {
  int j;
  int k;
  int m;
  int n;
  double x;
};

/// log(n!) from a table built once; n in [0, 1024).
double log_factorial(int n);

/// P(t > t_0 > t_{-1} > ... > t_{-j}, t_0 > t_1 > ... > t_k)
///   = t^{j+k+1} / (j! k! (j+k+1)).  Requires j, k >= 0 and j + k <= 300.
double prob_ordering(int j, int k, double t);

/// x^{p} / ((2j+m)! (2k+n)! p) with p = 2j+2k+m+n+1, computed in log space.
double gamma_term(const GammaTermSpec& spec);

/// Probability of G^{parity}_{j,k}. Requires 0 < alpha < 1.
double prob_main_event(const EventIndex& idx, const ModelParams& params);

/// Sum of the four parity probabilities for fixed (j,k):
///   theta Γ(0,0) - Γ(1,0) - Γ(0,1) + Γ(1,1)/theta.
double combined_term(int j, int k, const ModelParams& params);

struct EventSum {
  double value;
  /// Bound on the omitted mass |sum over (j,k) outside the square|.
  double tail_bound;
};

/// Sum of combined_term over 0 <= j, k <= max_index (row-major, compensated).
///
/// The tail bound uses |combined_term(j,k)| <= x d_j d_k with
/// d_i = sqrt(theta) x^{2i}/(2i)! + x^{2i+1}/((2i+1)! sqrt(theta)), so the
/// omitted mass is at most x (D^2 - D_N^2) <= 2 x D (D - D_N), where D is the
/// full series sqrt(theta) cosh x + sinh x / sqrt(theta) and D - D_N is
/// bounded by geometric majorants of the cosh/sinh tails.
EventSum rho_a_event_sum(const ModelParams& params, int max_index);

/// |truncated double sum of Γ(m,n) - its closed-form integral| for each
/// (m,n), with 0 <= j, k <= max_index. Order: (0,0), (0,1), (1,0), (1,1);
/// the integrals are x/2 + sinh(2x)/4, sinh^2(x)/2, sinh^2(x)/2,
/// sinh(2x)/4 - x/2.
struct ResummationResiduals {
  double cosh_cosh;
  double cosh_sinh;
  double sinh_cosh;
  double sinh_sinh;

  double max() const;
};

ResummationResiduals hyperbolic_resummation_check(double x, int max_index);

// --- Monte Carlo check of the event definitions ---------------------------

/// Whether chain C_c (c >= 1) occurs along one direction. times[i] and
/// types[i] describe the i-th site from the centre (index 0 is the centre).
/// The spans must hold at least c + 1 sites.
bool chain_event_occurs(int c, double t, std::span<const double> times,
                        std::span<const Species> types);

/// Whether G^{parity}_{j,k} occurs given both directions from the centre.
bool main_event_occurs(const EventIndex& idx, double t, std::span<const double> left_times,
                       std::span<const Species> left_types, std::span<const double> right_times,
                       std::span<const Species> right_types);

struct EventFrequency {
  EventIndex index;
  std::uint64_t hits;
  std::uint64_t trials;

  double frequency() const;
  /// Binomial standard error sqrt(p(1-p)/trials) of the frequency.
  double std_error() const;
};

/// Relative frequency of every main event with j <= max_j, k <= max_k over
/// `trials` independent draws of the site window -(2 max_j + 2) .. 2 max_k + 2.
/// Result order: j outer, k, then parity in kAllParities order.
std::vector<EventFrequency> simulate_event_frequencies(const ModelParams& params, int max_j,
                                                       int max_k, std::uint64_t trials,
                                                       std::uint64_t seed);

}  // namespace abrsa

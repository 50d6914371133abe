#include "abrsa/events.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "abrsa/compensated_sum.hpp"
#include "abrsa/rng.hpp"

namespace abrsa {

namespace {

constexpr int kLogFactorialSize = 1024;

// Extended precision keeps exp(log-sum) accurate when the exponent is large:
// in double, |log value| * eps alone exceeds 1e-13 near the index limit.
const std::array<long double, kLogFactorialSize>& log_factorial_table() {
  static const auto table = [] {
    std::array<long double, kLogFactorialSize> t{};
    for (int n = 0; n < kLogFactorialSize; ++n) t[n] = std::lgamma(n + 1.0L);
    return t;
  }();
  return table;
}

void require_interior(const ModelParams& params) {
  if (!params.interior()) throw std::domain_error("event probabilities require 0 < alpha < 1");
}

void require_indices(int j, int k) {
  if (j < 0 || k < 0) throw std::invalid_argument("event indices must be nonnegative");
}

// Upper bound on sum_{i > max_index} x^{2i+offset}/(2i+offset)!, offset 0 or 1.
double series_tail_bound(double x, int max_index, int offset) {
  const int first = 2 * (max_index + 1) + offset;
  if (x == 0.0) return 0.0;
  const double lead = std::exp(first * std::log(x) - log_factorial(first));
  const double ratio = x * x / ((first + 1.0) * (first + 2.0));
  return lead / (1.0 - ratio);
}

}  // namespace

std::string_view parity_name(Parity p) {
  switch (p) {
    case Parity::ee: return "ee";
    case Parity::oe: return "oe";
    case Parity::eo: return "eo";
    case Parity::oo: return "oo";
  }
  return "?";
}

double log_factorial(int n) {
  if (n < 0 || n >= kLogFactorialSize) throw std::out_of_range("log_factorial argument out of range");
  return static_cast<double>(log_factorial_table()[n]);
}

double prob_ordering(int j, int k, double t) {
  require_indices(j, k);
  if (j + k > 300) throw std::invalid_argument("prob_ordering requires j + k <= 300");
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("t must lie in [0,1]");
  if (t == 0.0) return 0.0;
  const int p = j + k + 1;
  const auto& lf = log_factorial_table();
  return static_cast<double>(std::exp(p * std::log(static_cast<long double>(t)) - lf[j] - lf[k] -
                                      std::log(static_cast<long double>(p))));
}

double gamma_term(const GammaTermSpec& s) {
  require_indices(s.j, s.k);
  if ((s.m != 0 && s.m != 1) || (s.n != 0 && s.n != 1)) {
    throw std::invalid_argument("gamma term offsets m, n must be 0 or 1");
  }
  if (!(s.x >= 0.0)) throw std::invalid_argument("gamma term argument must be nonnegative");
  if (s.x == 0.0) return 0.0;
  const int left = 2 * s.j + s.m;
  const int right = 2 * s.k + s.n;
  const int p = left + right + 1;
  const auto& lf = log_factorial_table();
  if (left >= kLogFactorialSize || right >= kLogFactorialSize) {
    throw std::invalid_argument("gamma term indices too large");
  }
  return static_cast<double>(std::exp(p * std::log(static_cast<long double>(s.x)) - lf[left] - lf[right] -
                                      std::log(static_cast<long double>(p))));
}

double prob_main_event(const EventIndex& idx, const ModelParams& params) {
  require_interior(params);
  require_indices(idx.j, idx.k);
  const double a = params.alpha();
  const double b = params.beta();
  const double x = derive(params).gamma * params.t();
  auto g = [&](int m, int n) { return gamma_term({idx.j, idx.k, m, n, x}); };

  const double ratio = a / b;
  const double mixed = std::sqrt(a) / (b * std::sqrt(b));  // alpha^{1/2} / beta^{3/2}
  double p = 0.0;
  switch (idx.parity) {
    case Parity::ee:
      p = ratio * std::sqrt(ratio) * g(1, 1);
      break;
    case Parity::oe:
      p = ratio * g(0, 1) - mixed * g(1, 1);
      break;
    case Parity::eo:
      p = ratio * g(1, 0) - mixed * g(1, 1);
      break;
    case Parity::oo:
      p = std::sqrt(ratio) * g(0, 0) - (g(1, 0) + g(0, 1)) / b + g(1, 1) / (std::sqrt(a) * b * std::sqrt(b));
      break;
  }
  // Differences of nonnegative terms may round a hair below zero.
  return std::clamp(p, 0.0, 1.0);
}

double combined_term(int j, int k, const ModelParams& params) {
  require_interior(params);
  require_indices(j, k);
  const auto [gamma, theta] = derive(params);
  const double x = gamma * params.t();
  auto g = [&](int m, int n) { return gamma_term({j, k, m, n, x}); };
  CompensatedSum sum;
  sum += theta * g(0, 0);
  sum += -g(1, 0);
  sum += -g(0, 1);
  sum += g(1, 1) / theta;
  return sum.value();
}

EventSum rho_a_event_sum(const ModelParams& params, int max_index) {
  require_interior(params);
  if (max_index < 1) throw std::invalid_argument("max_index must be >= 1");
  if (params.t() == 0.0) return {0.0, 0.0};

  CompensatedSum sum;
  for (int j = 0; j <= max_index; ++j) {
    for (int k = 0; k <= max_index; ++k) sum += combined_term(j, k, params);
  }

  const auto [gamma, theta] = derive(params);
  const double x = gamma * params.t();
  const double root = std::sqrt(theta);
  const double full = root * std::cosh(x) + std::sinh(x) / root;
  const double missing =
      root * series_tail_bound(x, max_index, 0) + series_tail_bound(x, max_index, 1) / root;
  // Small relative slack covers rounding in the bound's own evaluation.
  const double tail = 2.0 * x * full * missing * (1.0 + 1e-9);
  return {sum.value(), tail};
}

double ResummationResiduals::max() const {
  return std::max({cosh_cosh, cosh_sinh, sinh_cosh, sinh_sinh});
}

ResummationResiduals hyperbolic_resummation_check(double x, int max_index) {
  if (!(x >= 0.0 && x <= 0.5)) throw std::invalid_argument("x must lie in [0, 0.5]");
  if (max_index < 1) throw std::invalid_argument("max_index must be >= 1");

  CompensatedSum s00, s01, s10, s11;
  for (int j = 0; j <= max_index; ++j) {
    for (int k = 0; k <= max_index; ++k) {
      s00 += gamma_term({j, k, 0, 0, x});
      s01 += gamma_term({j, k, 0, 1, x});
      s10 += gamma_term({j, k, 1, 0, x});
      s11 += gamma_term({j, k, 1, 1, x});
    }
  }
  const double sh = std::sinh(x);
  const double quarter_sinh2x = 0.25 * std::sinh(2.0 * x);
  return {
      std::abs(s00.value() - (0.5 * x + quarter_sinh2x)),
      std::abs(s01.value() - 0.5 * sh * sh),
      std::abs(s10.value() - 0.5 * sh * sh),
      std::abs(s11.value() - (quarter_sinh2x - 0.5 * x)),
  };
}

bool chain_event_occurs(int c, double t, std::span<const double> times,
                        std::span<const Species> types) {
  if (c < 1) throw std::invalid_argument("chain index must be >= 1");
  if (times.size() < static_cast<std::size_t>(c + 1) || types.size() < times.size()) {
    throw std::invalid_argument("chain window too short");
  }
  const bool odd = (c % 2) == 1;
  // Sites 0 .. c-1 attempt in strictly decreasing time order before t; an odd
  // chain then needs site c to attempt after site c-1.
  const int last = c - 1;
  if (!(times[0] < t)) return false;
  for (int i = 1; i <= last; ++i) {
    if (!(times[i] < times[i - 1])) return false;
  }
  if (odd && !(times[last] < times[last + 1])) return false;

  // Types alternate A, B, ... up to the final A; the even chains end in A, A.
  const int pattern_end = odd ? c - 1 : c - 2;
  for (int i = 0; i <= pattern_end; ++i) {
    const Species want = (i % 2 == 0) ? Species::A : Species::B;
    if (types[i] != want) return false;
  }
  if (!odd && types[c - 1] != Species::A) return false;
  return true;
}

bool main_event_occurs(const EventIndex& idx, double t, std::span<const double> left_times,
                       std::span<const Species> left_types, std::span<const double> right_times,
                       std::span<const Species> right_types) {
  const bool left_even = idx.parity == Parity::ee || idx.parity == Parity::eo;
  const bool right_even = idx.parity == Parity::ee || idx.parity == Parity::oe;
  const int left_chain = left_even ? 2 * idx.j + 2 : 2 * idx.j + 1;
  const int right_chain = right_even ? 2 * idx.k + 2 : 2 * idx.k + 1;
  return chain_event_occurs(left_chain, t, left_times, left_types) &&
         chain_event_occurs(right_chain, t, right_times, right_types);
}

double EventFrequency::frequency() const {
  return trials == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(trials);
}

double EventFrequency::std_error() const {
  if (trials == 0) return 0.0;
  const double p = frequency();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

std::vector<EventFrequency> simulate_event_frequencies(const ModelParams& params, int max_j,
                                                       int max_k, std::uint64_t trials,
                                                       std::uint64_t seed) {
  require_indices(max_j, max_k);
  const int left_len = 2 * max_j + 3;  // centre plus sites -1 .. -(2 max_j + 2)
  const int right_len = 2 * max_k + 3;

  std::vector<EventFrequency> out;
  for (int j = 0; j <= max_j; ++j) {
    for (int k = 0; k <= max_k; ++k) {
      for (Parity p : kAllParities) out.push_back({{j, k, p}, 0, trials});
    }
  }

  std::vector<double> left_times(left_len), right_times(right_len);
  std::vector<Species> left_types(left_len), right_types(right_len);
  const double t = params.t();
  const double alpha = params.alpha();
  auto draw_type = [alpha](CounterStream& rng) {
    return rng.next_unit() < alpha ? Species::A : Species::B;
  };

  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    CounterStream rng(stream_key(seed, trial));
    left_times[0] = right_times[0] = rng.next_unit();
    left_types[0] = right_types[0] = draw_type(rng);
    for (int i = 1; i < left_len; ++i) {
      left_times[i] = rng.next_unit();
      left_types[i] = draw_type(rng);
    }
    for (int i = 1; i < right_len; ++i) {
      right_times[i] = rng.next_unit();
      right_types[i] = draw_type(rng);
    }
    if (left_types[0] != Species::A || !(left_times[0] < t)) continue;
    for (auto& f : out) {
      if (main_event_occurs(f.index, t, left_times, left_types, right_times, right_types)) ++f.hits;
    }
  }
  return out;
}

}  // namespace abrsa

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "abrsa/analytic.hpp"
#include "abrsa/events.hpp"

using namespace abrsa;

namespace {

// Γ by direct products in long double: x^p / ((2j+m)! (2k+n)! p).
long double gamma_by_products(int j, int k, int m, int n, long double x) {
  const int left = 2 * j + m, right = 2 * k + n, p = left + right + 1;
  long double v = 1.0L / p;
  int i = 1, l = 1, r = 1;
  for (; i <= p; ++i) {
    v *= x;
    if (l <= left) v /= l++;
    if (r <= right) v /= r++;
  }
  return v;
}

// Composite Simpson with a fixed panel count; independent of the library
// quadrature.
template <typename F>
double simpson(F f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("ordering probabilities") {
  CHECK(prob_ordering(0, 0, 0.8) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(prob_ordering(1, 0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(prob_ordering(1, 1, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(prob_ordering(3, 2, 0.0) == 0.0);
  // One-sided chains: t^{j+1}/(j+1)!.
  for (int j = 0; j <= 15; ++j) {
    CHECK(prob_ordering(j, 0, 0.7) == doctest::Approx(std::pow(0.7, j + 1) / factorial(j + 1)).epsilon(1e-13));
    CHECK(prob_ordering(j, 0, 0.7) == prob_ordering(0, j, 0.7));
  }
  CHECK_THROWS_AS(prob_ordering(200, 101, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(prob_ordering(-1, 0, 0.5), std::invalid_argument);
}

TEST_CASE("ordering probability is the integral of the two one-sided chains") {
  // int_0^t u^j/j! u^k/k! du, the route by which the formula is obtained.
  for (int j = 0; j <= 4; ++j) {
    for (int k = 0; k <= 4; ++k) {
      const double direct = simpson(
          [&](double u) { return std::pow(u, j) / factorial(j) * std::pow(u, k) / factorial(k); }, 0.0,
          0.9, 2000);
      CHECK(prob_ordering(j, k, 0.9) == doctest::Approx(direct).epsilon(1e-11));
    }
  }
}

TEST_CASE("gamma term worked examples") {
  CHECK(gamma_term({0, 0, 0, 0, 0.5}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(gamma_term({0, 0, 1, 1, 0.5}) == doctest::Approx(0.125 / 3.0).epsilon(1e-15));
  CHECK(gamma_term({1, 0, 0, 1, 0.3}) == doctest::Approx(0.0010125).epsilon(1e-14));
  const double integral = simpson([](double u) { return u * u / 2.0 * u; }, 0.0, 0.3, 200);
  CHECK(gamma_term({1, 0, 0, 1, 0.3}) == doctest::Approx(integral).epsilon(1e-12));
  CHECK(gamma_term({4, 2, 1, 0, 0.0}) == 0.0);
  CHECK_THROWS_AS(gamma_term({0, 0, 2, 0, 0.5}), std::invalid_argument);
}

TEST_CASE("gamma terms are accurate to 1e-13 relative for indices up to 50") {
  for (int j = 0; j <= 50; j += 5) {
    for (int k = 0; k <= 50; k += 7) {
      for (int m = 0; m <= 1; ++m) {
        for (int n = 0; n <= 1; ++n) {
          for (double x : {0.05, 0.3, 0.5}) {
            const long double ref = gamma_by_products(j, k, m, n, x);
            if (ref < 1e-290L) continue;  // below the normal range of double
            const double v = gamma_term({j, k, m, n, x});
            CAPTURE(j);
            CAPTURE(k);
            CHECK(std::abs(v - ref) / ref <= 1e-13L);
          }
        }
      }
    }
  }
  // Factorials beyond 170! would overflow a direct evaluation.
  const double far = gamma_term({200, 200, 1, 1, 0.5});
  CHECK(std::isfinite(far));
  CHECK(far >= 0.0);
}

TEST_CASE("main event probabilities") {
  const ModelParams half(0.5, 1.0);
  CHECK(prob_main_event({0, 0, Parity::ee}, half) == doctest::Approx(1.0 / 24.0).epsilon(1e-14));
  const double oo = prob_main_event({0, 0, Parity::oo}, ModelParams(0.5, 1e-4));
  CHECK(oo == doctest::Approx(0.5e-4).epsilon(0.01));
  CHECK(oo == doctest::Approx(series_rho_a_small_t(ModelParams(0.5, 1e-4), 1)).epsilon(0.01));
  for (Parity p : kAllParities) CHECK(prob_main_event({0, 0, p}, ModelParams(0.3, 0.0)) == 0.0);
  CHECK_THROWS_AS(prob_main_event({0, 0, Parity::ee}, ModelParams(0.0, 1.0)), std::domain_error);
  CHECK_THROWS_AS(prob_main_event({0, 0, Parity::ee}, ModelParams(1.0, 1.0)), std::domain_error);
}

TEST_CASE("main event probabilities follow from the ordering probabilities") {
  // Type-sequence probability times the time-ordering probability, with the
  // complements expanded: an independent route to the same four formulas.
  for (double a : {0.2, 0.5, 0.85}) {
    for (double t : {0.4, 1.0}) {
      const ModelParams p(a, t);
      const double b = 1.0 - a;
      for (int j = 0; j <= 3; ++j) {
        for (int k = 0; k <= 3; ++k) {
          auto H = [&](int l, int r) { return prob_ordering(l, r, t); };
          const double type_ee = std::pow(a, j + k + 3) * std::pow(b, j + k);
          const double type_mixed = std::pow(a, j + k + 2) * std::pow(b, j + k);
          const double type_oo = std::pow(a, j + k + 1) * std::pow(b, j + k);
          const double ee = type_ee * H(2 * j + 1, 2 * k + 1);
          const double oe = type_mixed * (H(2 * j, 2 * k + 1) - H(2 * j + 1, 2 * k + 1));
          const double eo = type_mixed * (H(2 * j + 1, 2 * k) - H(2 * j + 1, 2 * k + 1));
          const double oo = type_oo * (H(2 * j, 2 * k) - H(2 * j + 1, 2 * k) - H(2 * j, 2 * k + 1) +
                                       H(2 * j + 1, 2 * k + 1));
          CHECK(prob_main_event({j, k, Parity::ee}, p) == doctest::Approx(ee).epsilon(1e-12));
          CHECK(prob_main_event({j, k, Parity::oe}, p) == doctest::Approx(oe).epsilon(1e-12));
          CHECK(prob_main_event({j, k, Parity::eo}, p) == doctest::Approx(eo).epsilon(1e-12));
          CHECK(prob_main_event({j, k, Parity::oo}, p) == doctest::Approx(oo).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("combined term") {
  CHECK(combined_term(0, 0, ModelParams(0.4, 0.0)) == 0.0);
  // x = 1/2, theta = 1: 1/2 - 1/8 - 1/8 + 1/24.
  const ModelParams half(0.5, 1.0);
  CHECK(combined_term(0, 0, half) == doctest::Approx(7.0 / 24.0).epsilon(1e-15));
  double four = 0.0;
  for (Parity p : kAllParities) four += prob_main_event({0, 0, p}, half);
  CHECK(combined_term(0, 0, half) == doctest::Approx(four).epsilon(1e-14));
  const double small = combined_term(3, 2, half);
  CHECK(small > 0.0);
  CHECK(small < 1e-6);
}

TEST_CASE("combined term equals the sum of the four parities on a grid") {
  for (double a : {0.05, 0.3, 0.5, 0.7, 0.95}) {
    for (double t : {0.1, 0.5, 1.0}) {
      const ModelParams p(a, t);
      for (int j = 0; j <= 10; ++j) {
        for (int k = 0; k <= 10; ++k) {
          double four = 0.0;
          for (Parity par : kAllParities) {
            const double v = prob_main_event({j, k, par}, p);
            CHECK(v >= 0.0);
            four += v;
          }
          CHECK(std::abs(combined_term(j, k, p) - four) <= 1e-14);
        }
      }
    }
  }
}

TEST_CASE("event sum reproduces the closed form") {
  const auto half = rho_a_event_sum(ModelParams(0.5, 1.0), 25);
  CHECK(std::abs(half.value - closed_form_rho_a(ModelParams(0.5, 1.0))) <= 1e-12);
  CHECK(half.tail_bound <= 1e-12);
  const auto ninety = rho_a_event_sum(ModelParams(0.9, 1.0), 25);
  CHECK(std::abs(ninety.value - closed_form_rho_a(ModelParams(0.9, 1.0))) <= 1e-12);
  const auto zero = rho_a_event_sum(ModelParams(0.3, 0.0), 1);
  CHECK(zero.value == 0.0);
  CHECK(zero.tail_bound == 0.0);
  CHECK_THROWS_AS(rho_a_event_sum(ModelParams(0.3, 0.5), 0), std::invalid_argument);

  for (int i = 1; i <= 19; ++i) {
    for (int k = 1; k <= 10; ++k) {
      const ModelParams p(0.05 * i, 0.1 * k);
      const auto s = rho_a_event_sum(p, 25);
      CHECK(std::abs(s.value - closed_form_rho_a(p)) <= std::max(1e-12, s.tail_bound));
    }
  }
}

TEST_CASE("tail bound brackets the truncated sums") {
  // Small truncations leave real mass behind; the bound must cover it.
  for (double a : {0.05, 0.5, 0.95}) {
    for (double t : {0.3, 1.0}) {
      const ModelParams p(a, t);
      const double exact = closed_form_rho_a(p);
      double previous = INFINITY;
      for (int n = 1; n <= 6; ++n) {
        const auto s = rho_a_event_sum(p, n);
        CAPTURE(n);
        CHECK(std::abs(exact - s.value) <= s.tail_bound + 1e-15);
        CHECK(s.tail_bound < previous);
        previous = s.tail_bound;
      }
    }
  }
}

TEST_CASE("hyperbolic resummation") {
  const auto zero = hyperbolic_resummation_check(0.0, 5);
  CHECK(zero.max() == 0.0);
  CHECK(hyperbolic_resummation_check(0.5, 25).max() <= 1e-14);
  CHECK(hyperbolic_resummation_check(0.25, 3).max() <= 1e-8);
  for (int i = 1; i <= 10; ++i) CHECK(hyperbolic_resummation_check(0.05 * i, 30).max() <= 1e-12);
  CHECK_THROWS_AS(hyperbolic_resummation_check(0.6, 5), std::invalid_argument);
}

TEST_CASE("chain events on hand-built windows") {
  using S = Species;
  // C_1: centre attempts before t and before its neighbour.
  CHECK(chain_event_occurs(1, 1.0, std::vector{0.2, 0.5}, std::vector{S::A, S::B}));
  CHECK_FALSE(chain_event_occurs(1, 0.1, std::vector{0.2, 0.5}, std::vector{S::A, S::B}));
  CHECK_FALSE(chain_event_occurs(1, 1.0, std::vector{0.5, 0.2}, std::vector{S::A, S::B}));
  // C_2: neighbour first but also A.
  CHECK(chain_event_occurs(2, 1.0, std::vector{0.5, 0.2, 0.9}, std::vector{S::A, S::A, S::B}));
  CHECK_FALSE(chain_event_occurs(2, 1.0, std::vector{0.5, 0.2, 0.9}, std::vector{S::A, S::B, S::B}));
  // C_3: A B A with t_0 > t_1 > t_2 < t_3.
  CHECK(chain_event_occurs(3, 1.0, std::vector{0.6, 0.4, 0.2, 0.3}, std::vector{S::A, S::B, S::A, S::B}));
  CHECK_FALSE(chain_event_occurs(3, 1.0, std::vector{0.6, 0.4, 0.2, 0.1}, std::vector{S::A, S::B, S::A, S::B}));
  // C_4: A B A A, all descending.
  CHECK(chain_event_occurs(4, 1.0, std::vector{0.6, 0.4, 0.2, 0.1, 0.9},
                           std::vector{S::A, S::B, S::A, S::A, S::B}));
  CHECK_THROWS_AS(chain_event_occurs(3, 1.0, std::vector{0.1, 0.2}, std::vector{S::A, S::A}),
                  std::invalid_argument);
}

TEST_CASE("simulated event frequencies agree with the formulas") {
  const ModelParams p(0.5, 1.0);
  const auto freqs = simulate_event_frequencies(p, 1, 1, 1'000'000, 99);
  REQUIRE(freqs.size() == 16);
  for (const auto& f : freqs) {
    const double expected = prob_main_event(f.index, p);
    CAPTURE(f.index.j);
    CAPTURE(f.index.k);
    CAPTURE(parity_name(f.index.parity));
    CHECK(std::abs(f.frequency() - expected) <= 4.0 * f.std_error());
  }
  // Deterministic in the seed.
  const auto again = simulate_event_frequencies(p, 1, 1, 1000, 5);
  const auto same = simulate_event_frequencies(p, 1, 1, 1000, 5);
  for (std::size_t i = 0; i < again.size(); ++i) CHECK(again[i].hits == same[i].hits);
}

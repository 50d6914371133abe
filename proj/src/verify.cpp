#include "abrsa/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "abrsa/analytic.hpp"
#include "abrsa/events.hpp"
#include "abrsa/oracle.hpp"
#include "abrsa/simulator.hpp"

namespace abrsa {

namespace {

// alpha in {0.05, ..., 0.95} x t in {0.1, ..., 1.0}
template <typename Fn>
void for_standard_grid(Fn&& fn) {
  for (int i = 1; i <= 19; ++i) {
    for (int k = 1; k <= 10; ++k) fn(ModelParams(0.05 * i, 0.1 * k));
  }
}

// Central difference with h = 1e-6; at t = 1 the second-order one-sided
// stencil, since t may not exceed 1.
double finite_difference_slope(const std::function<double(const ModelParams&)>& rho,
                               const ModelParams& p) {
  constexpr double h = 1e-6;
  const double a = p.alpha();
  const double t = p.t();
  if (t + h <= 1.0) return (rho(ModelParams(a, t + h)) - rho(ModelParams(a, t - h))) / (2.0 * h);
  return (3.0 * rho(p) - 4.0 * rho(ModelParams(a, t - h)) + rho(ModelParams(a, t - 2.0 * h))) / (2.0 * h);
}

CheckResult at_most(std::string name, double measured, double tolerance) {
  return {std::move(name), measured, tolerance, measured <= tolerance};
}

}  // namespace

VerifyTier parse_tier(std::string_view name) {
  if (name == "fast") return VerifyTier::fast;
  if (name == "full") return VerifyTier::full;
  throw std::invalid_argument("unknown verification tier '" + std::string(name) + "'");
}

VerifyHooks default_hooks() { return {closed_form_rho_a}; }

std::vector<CheckResult> run_verification(VerifyTier tier, const VerifyHooks& hooks) {
  const auto& rho = hooks.closed_form;
  std::vector<CheckResult> out;

  double quad = 0.0, event = 0.0, tail = 0.0, fd = 0.0, sum_rule = 0.0;
  double rate_min = 1.0;
  for_standard_grid([&](const ModelParams& p) {
    const double closed = rho(p);
    quad = std::max(quad, std::abs(closed - integral_rho_a(p, 1e-12).value));
    const EventSum es = rho_a_event_sum(p, 25);
    event = std::max(event, std::abs(closed - es.value));
    tail = std::max(tail, es.tail_bound);

    const double slope = finite_difference_slope(rho, p);
    const double rate = rho_a_rate(p);
    fd = std::max(fd, std::abs(slope - rate));
    rate_min = std::min(rate_min, rate);

    const double b = rho(p.swapped());
    const double x = 1.0 - closed - b;
    sum_rule = std::max(sum_rule, std::max(0.0, -x));
  });
  out.push_back(at_most("closed_form_vs_quadrature", quad, 1e-10));
  out.push_back(at_most("closed_form_vs_event_sum", event, 1e-12));
  out.push_back(at_most("event_sum_tail_bound", tail, 1e-12));
  out.push_back(at_most("rate_vs_finite_difference", fd, 1e-7));
  out.push_back(at_most("rate_negativity", std::max(0.0, -rate_min), 0.0));
  out.push_back(at_most("sum_rule_overshoot", sum_rule, 1e-12));

  double half = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = i / 99.0;
    half = std::max(half, std::abs(rho(ModelParams(0.5, t)) - 0.5 * (1.0 - std::exp(-t))));
  }
  out.push_back(at_most("equal_probability_reduction", half, 1e-13));

  out.push_back(at_most("reference_point_rho_A(1,0.9)", std::abs(rho(ModelParams(0.9, 1.0)) - 0.84), 0.01));
  out.push_back(at_most("reference_point_rho_B(1,0.9)", std::abs(rho(ModelParams(0.1, 1.0)) - 0.038), 0.005));

  double boundary = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double t = i / 20.0;
    boundary = std::max({boundary, std::abs(rho(ModelParams(0.0, t))), std::abs(rho(ModelParams(1.0, t)) - t)});
  }
  out.push_back(at_most("boundary_cases", boundary, 0.0));

  // Series: measured is the worst error relative to the allowed O-term cap.
  double small_t = 0.0;
  for (double t : {1e-3, 1e-2}) {
    for (int i = 1; i <= 9; ++i) {
      const ModelParams p(0.1 * i, t);
      small_t = std::max(small_t, std::abs(rho(p) - series_rho_a_small_t(p, 4)) / (100.0 * std::pow(t, 5)));
    }
  }
  out.push_back(at_most("small_t_series_(ratio_to_cap)", small_t, 1.0));
  double small_alpha = 0.0;
  for (double a : {0.01, 0.02, 0.05}) {
    small_alpha = std::max(small_alpha, std::abs(rho(ModelParams(a, 1.0)) - series_rho_a_t1_small_alpha(a, 4)) /
                                            (10.0 * std::pow(a, 4.5)));
  }
  out.push_back(at_most("t1_small_alpha_series_(ratio_to_cap)", small_alpha, 1.0));

  double resum = 0.0;
  for (int i = 1; i <= 10; ++i) resum = std::max(resum, hyperbolic_resummation_check(0.05 * i, 30).max());
  out.push_back(at_most("hyperbolic_resummation", resum, 1e-12));

  double two_site = 0.0, one_site = 0.0;
  for (int i = 1; i <= 9; ++i) {
    for (int k = 1; k <= 9; ++k) {
      const double a = 0.1 * i, t = 0.1 * k;
      const auto two = exact_occupation({2, Boundary::free, a, t, 0});
      two_site = std::max(two_site, std::abs(two.p_a - (a * t - a * (1.0 - a) * t * t / 2.0)));
      const auto one = exact_occupation({1, Boundary::free, a, t, 0});
      one_site = std::max(one_site, std::abs(one.p_a - a * t));
    }
  }
  out.push_back(at_most("oracle_two_site_formula", two_site, 1e-14));
  out.push_back(at_most("oracle_single_site", one_site, 1e-15));

  const WindowDensity window = window_density(0.5, 0.3, 4);
  out.push_back(at_most("window_convergence(0.5,0.3,w=4)", std::abs(window.value - rho(ModelParams(0.5, 0.3))), 1e-4));

  double contour = 0.0;
  for (double level : {0.05, 0.1, 0.2, 0.4, 0.8}) {
    for (int i = 1; i <= 50; ++i) {
      const double a = i / 50.0;
      if (const auto t = contour_solve_t(a, level)) {
        contour = std::max(contour, std::abs(rho(ModelParams(a, *t)) - level));
      }
    }
  }
  out.push_back(at_most("contour_round_trip", contour, 1e-10));

  if (tier == VerifyTier::full) {
    for (const auto& [t, a] : {std::pair{1.0, 0.5}, std::pair{1.0, 0.9}, std::pair{0.5, 0.2}}) {
      LatticeConfig config;
      config.n_sites = 1'000'000;
      config.alpha = a;
      config.sample_times = {t};
      config.replicas = 8;
      config.master_seed = 20240601;
      const auto est = estimate_density(config).front();
      const double z = (est.mean.a - rho(ModelParams(a, t))) / est.std_error.a;
      char name[64];
      std::snprintf(name, sizeof name, "simulator_z_score(t=%g,alpha=%g)", t, a);
      out.push_back(at_most(name, std::abs(z), 4.0));
    }

    LatticeConfig path;
    path.n_sites = 6;
    path.boundary = Boundary::free;
    path.alpha = 0.5;
    path.sample_times = {1.0};
    path.replicas = 1'000'000;
    const auto occ = estimate_site_occupation(path).front();
    double worst = 0.0;
    for (std::size_t s = 0; s < 6; ++s) {
      const double exact = exact_occupation({6, Boundary::free, 0.5, 1.0, s}).p_a;
      worst = std::max(worst, std::abs(occ.p_a(s) - exact) / occ.std_error_a(s));
    }
    out.push_back(at_most("oracle_vs_simulator_six_site_|z|", worst, 4.0));

    double worst_event = 0.0;
    const ModelParams p(0.5, 1.0);
    for (const auto& f : simulate_event_frequencies(p, 1, 1, 1'000'000, 20240601)) {
      const double z = (f.frequency() - prob_main_event(f.index, p)) / f.std_error();
      worst_event = std::max(worst_event, std::abs(z));
    }
    out.push_back(at_most("event_frequencies_|z|", worst_event, 4.0));
  }
  return out;
}

int cmd_verify(VerifyTier tier, std::ostream& out, const VerifyHooks& hooks) {
  const auto results = run_verification(tier, hooks);
  int failed = 0;
  for (const auto& r : results) {
    char line[160];
    std::snprintf(line, sizeof line, "%s %-40s measured=%.3e tolerance=%.3e", r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.measured, r.tolerance);
    out << line << '\n';
    if (!r.passed) ++failed;
  }
  out << (failed == 0 ? "all " + std::to_string(results.size()) + " checks passed"
                      : std::to_string(failed) + " of " + std::to_string(results.size()) + " checks failed")
      << '\n';
  return failed == 0 ? 0 : 4;
}

}  // namespace abrsa

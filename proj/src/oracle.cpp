#include "abrsa/oracle.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "abrsa/compensated_sum.hpp"
#include "abrsa/errors.hpp"
#include "abrsa/events.hpp"

namespace abrsa {

namespace {

using Mask = std::uint32_t;

struct Enumerator {
  std::size_t n;
  std::size_t target;
  double alpha;
  std::vector<Mask> neighbors;

  CompensatedSum a, b, x;  // conditional outcome mass for the current subset
  std::vector<std::size_t> members;

  // remaining: attempted-but-not-yet-acted sites; mass: probability of the
  // prefix so far within this subset.
  void walk(Mask remaining, Mask occ_a, Mask occ_b, double mass) {
    const auto left = static_cast<double>(std::popcount(remaining));
    for (std::size_t s : members) {
      const Mask bit = Mask{1} << s;
      if (!(remaining & bit)) continue;
      const double pick = mass / left;
      for (int type = 0; type < 2; ++type) {
        const bool is_a = type == 0;
        const double w = pick * (is_a ? alpha : 1.0 - alpha);
        if (w == 0.0) continue;
        Mask na = occ_a, nb = occ_b;
        if (is_a) {
          if (!(occ_b & neighbors[s])) na |= bit;
        } else {
          if (!(occ_a & neighbors[s])) nb |= bit;
        }
        if (s == target) {
          if (na & bit) a += w;
          else if (nb & bit) b += w;
          else x += w;
        } else {
          walk(remaining & ~bit, na, nb, w);
        }
      }
    }
  }
};

}  // namespace

void OracleProblem::validate() const {
  if (n_sites < 1) throw std::invalid_argument("oracle needs at least one site");
  if (n_sites > kOracleMaxSites) {
    throw size_cap_error("oracle enumeration is capped at " + std::to_string(kOracleMaxSites) +
                         " sites, got " + std::to_string(n_sites));
  }
  if (boundary == Boundary::periodic && n_sites < 3) {
    throw std::invalid_argument("a periodic lattice needs at least 3 sites");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0,1]");
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("t must lie in [0,1]");
  if (target_site >= n_sites) throw std::invalid_argument("target site outside the lattice");
}

OccupationProbabilities exact_occupation(const OracleProblem& problem) {
  problem.validate();
  const std::size_t n = problem.n_sites;

  Enumerator e{n, problem.target_site, problem.alpha, std::vector<Mask>(n, 0), {}, {}, {}, {}};
  for (std::size_t s = 0; s < n; ++s) {
    if (s > 0 || problem.boundary == Boundary::periodic) e.neighbors[s] |= Mask{1} << ((s + n - 1) % n);
    if (s + 1 < n || problem.boundary == Boundary::periodic) e.neighbors[s] |= Mask{1} << ((s + 1) % n);
  }

  CompensatedSum p_a, p_b, p_x;
  const double t = problem.t;
  const Mask target_bit = Mask{1} << problem.target_site;
  const Mask all = (Mask{1} << n) - 1;
  for (std::size_t size = 0; size <= n; ++size) {
    const double weight =
        std::pow(t, static_cast<double>(size)) * std::pow(1.0 - t, static_cast<double>(n - size));
    if (weight == 0.0) continue;
    for (Mask subset = 0; subset <= all; ++subset) {
      if (static_cast<std::size_t>(std::popcount(subset)) != size) continue;
      if (!(subset & target_bit)) {
        p_x += weight;  // the target never attempts
        continue;
      }
      e.members.clear();
      for (std::size_t s = 0; s < n; ++s) {
        if (subset & (Mask{1} << s)) e.members.push_back(s);
      }
      e.a = {};
      e.b = {};
      e.x = {};
      e.walk(subset, 0, 0, 1.0);
      p_a += weight * e.a.value();
      p_b += weight * e.b.value();
      p_x += weight * e.x.value();
    }
  }
  return {p_a.value(), p_b.value(), p_x.value()};
}

WindowDensity window_density(double alpha, double t, int half_width) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("window alpha must lie in (0,1)");
  if (half_width < 1) throw std::invalid_argument("half_width must be >= 1");
  if (half_width > kWindowMaxHalfWidth) {
    throw size_cap_error("window half_width is capped at " + std::to_string(kWindowMaxHalfWidth));
  }
  const auto w = static_cast<std::size_t>(half_width);
  const OracleProblem problem{2 * w + 1, Boundary::free, alpha, t, w};
  const auto occ = exact_occupation(problem);
  return {occ.p_a, 2.0 * prob_ordering(0, half_width, t)};
}

}  // namespace abrsa

#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "abrsa/params.hpp"

namespace abrsa {

enum class VerifyTier { fast, full };

/// Throws std::invalid_argument for anything but "fast" or "full".
VerifyTier parse_tier(std::string_view name);

struct CheckResult {
  std::string name;
  double measured;
  double tolerance;
  bool passed;
};

/// Replaceable closed form so the harness can be checked against a
/// deliberately broken implementation.
struct VerifyHooks {
  std::function<double(const ModelParams&)> closed_form;
};

VerifyHooks default_hooks();

/// fast: analytic identities, event sums, resummation, series, small oracle
/// problems and contour round trips. full: adds the Monte Carlo comparisons.
std::vector<CheckResult> run_verification(VerifyTier tier, const VerifyHooks& hooks);

/// Prints one line per check and returns 0, or 4 if any check failed.
int cmd_verify(VerifyTier tier, std::ostream& out, const VerifyHooks& hooks = default_hooks());

}  // namespace abrsa

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "abrsa/oracle.hpp"
#include "abrsa/simulator.hpp"

namespace abrsa::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInvalidArguments = 2,
  kEngineFailure = 3,
  kVerificationFailure = 4,
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;

enum class Engine { closed_form, event_sum, integral, simulate };

std::string_view engine_name(Engine e);
/// Throws std::invalid_argument for an unknown name.
Engine parse_engine(std::string_view name);

struct EngineOptions {
  int max_index = 25;
  double quad_tol = 1e-12;
  /// Used by the simulate engine; alpha and sample_times are set per point.
  LatticeConfig lattice{.n_sites = 100000, .replicas = 8};
};

/// One evaluation: densities plus engine diagnostics.
///   closed_form: diag1 = diag2 = 0
///   event_sum:   tail bounds of rho_A and rho_B
///   integral:    quadrature error estimates of rho_A and rho_B
///   simulate:    standard errors of rho_A and rho_B
struct EvalRecord {
  double t;
  double alpha;
  double rho_a;
  double rho_b;
  double rho_x;
  Engine engine;
  double diag1;
  double diag2;
};

EvalRecord evaluate(double t, double alpha, Engine engine, const EngineOptions& options);

/// Header plus one record.
void cmd_eval(double t, double alpha, Engine engine, const EngineOptions& options,
              std::ostream& out);

struct SweepSpec {
  std::vector<double> alpha_grid;
  std::vector<double> t_grid;
  Engine engine = Engine::closed_form;
  EngineOptions options;
  /// Row order: t outer (one curve per t) instead of alpha outer.
  bool t_outer = false;

  /// Grids nonempty, values in [0,1], no duplicates.
  void validate() const;
};

/// n uniform points on [0,1] (n >= 2).
std::vector<double> uniform_grid(int n);

/// Density against t for alpha in {0.2, 0.5, 0.75, 0.9}, 201 t points.
SweepSpec left_panel_sweep();
/// Density against alpha for t in {0.2, 0.5, 1}, 201 alpha points.
SweepSpec right_panel_sweep();

/// Columns: t, alpha, rho_A, rho_B, rho_X, engine, diag1, diag2.
void cmd_sweep(const std::vector<SweepSpec>& specs, std::ostream& out);

struct ContourSpec {
  std::vector<double> levels = {0.05, 0.1, 0.2, 0.4, 0.8};
  int alpha_resolution = 200;

  /// Levels strictly ascending in (0,1); resolution >= 1.
  void validate() const;
};

/// Columns: lambda, alpha, t, status. Per level, one "curve_start" row at the
/// alpha where the contour reaches t = 1, then alpha = i / resolution for
/// i = 1..resolution with status "ok" or "no_solution" (t left empty).
void cmd_contour(const ContourSpec& spec, std::ostream& out);

/// Columns: time, n_sites, replicas, rho_A_mean, rho_A_stderr, rho_B_mean,
/// rho_B_stderr, rho_X_mean, rho_X_stderr, rho_A_closed, z_A.
void cmd_simulate(const LatticeConfig& config, std::ostream& out);

/// Columns: n_sites, boundary, alpha, t, target, p_A, p_B, p_X, rho_A_closed,
/// gap, truncation_bound. The last three are filled only for a centred free
/// window (odd n, target in the middle, 0 < alpha < 1).
void cmd_oracle(const OracleProblem& problem, std::ostream& out);

}  // namespace abrsa::cli

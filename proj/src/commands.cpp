#include "abrsa/commands.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "abrsa/analytic.hpp"
#include "abrsa/csv.hpp"
#include "abrsa/errors.hpp"
#include "abrsa/events.hpp"

namespace abrsa::cli {

namespace {

void check_grid(const std::vector<double>& grid, const char* name) {
  if (grid.empty()) throw std::invalid_argument(std::string(name) + " grid is empty");
  std::set<double> seen;
  for (double v : grid) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument(std::string(name) + " grid value outside [0,1]: " + format_real(v));
    }
    if (!seen.insert(v).second) {
      throw std::invalid_argument(std::string(name) + " grid has duplicate value " + format_real(v));
    }
  }
}

double residual_density(double rho_a, double rho_b) {
  const double x = 1.0 - rho_a - rho_b;
  if (x < -1e-12) throw engine_error("densities exceed one");
  return std::max(x, 0.0);
}

void write_eval_row(CsvWriter& csv, const EvalRecord& r) {
  csv.field(r.t).field(r.alpha).field(r.rho_a).field(r.rho_b).field(r.rho_x);
  csv.field(engine_name(r.engine)).field(r.diag1).field(r.diag2);
  csv.end_row();
}

void write_eval_header(CsvWriter& csv) {
  csv.header({"t", "alpha", "rho_A", "rho_B", "rho_X", "engine", "diag1", "diag2"});
}

}  // namespace

std::string_view engine_name(Engine e) {
  switch (e) {
    case Engine::closed_form: return "closed_form";
    case Engine::event_sum: return "event_sum";
    case Engine::integral: return "integral";
    case Engine::simulate: return "simulate";
  }
  return "?";
}

Engine parse_engine(std::string_view name) {
  for (Engine e : {Engine::closed_form, Engine::event_sum, Engine::integral, Engine::simulate}) {
    if (engine_name(e) == name) return e;
  }
  throw std::invalid_argument("unknown engine '" + std::string(name) + "'");
}

EvalRecord evaluate(double t, double alpha, Engine engine, const EngineOptions& options) {
  const ModelParams params(alpha, t);
  EvalRecord r{t, alpha, 0.0, 0.0, 0.0, engine, 0.0, 0.0};

  if (engine == Engine::simulate) {
    LatticeConfig config = options.lattice;
    config.alpha = alpha;
    config.sample_times = {t};
    const auto est = estimate_density(config).front();
    r.rho_a = est.mean.a;
    r.rho_b = est.mean.b;
    r.rho_x = est.mean.x;
    r.diag1 = est.std_error.a;
    r.diag2 = est.std_error.b;
    return r;
  }

  // The series-based engines need 0 < alpha < 1; the endpoints are exact.
  if (engine == Engine::closed_form || !params.interior()) {
    const DensityTriple d = density_triple(params);
    r.rho_a = d.rho_a();
    r.rho_b = d.rho_b();
    r.rho_x = d.rho_x();
    return r;
  }

  if (engine == Engine::event_sum) {
    const EventSum a = rho_a_event_sum(params, options.max_index);
    const EventSum b = rho_a_event_sum(params.swapped(), options.max_index);
    r.rho_a = a.value;
    r.rho_b = b.value;
    r.diag1 = a.tail_bound;
    r.diag2 = b.tail_bound;
  } else {
    const QuadratureResult a = integral_rho_a(params, options.quad_tol);
    const QuadratureResult b = integral_rho_a(params.swapped(), options.quad_tol);
    r.rho_a = a.value;
    r.rho_b = b.value;
    r.diag1 = a.error_estimate;
    r.diag2 = b.error_estimate;
  }
  r.rho_x = residual_density(r.rho_a, r.rho_b);
  return r;
}

void cmd_eval(double t, double alpha, Engine engine, const EngineOptions& options,
              std::ostream& out) {
  const EvalRecord r = evaluate(t, alpha, engine, options);
  CsvWriter csv(out);
  write_eval_header(csv);
  write_eval_row(csv, r);
}

void SweepSpec::validate() const {
  check_grid(alpha_grid, "alpha");
  check_grid(t_grid, "t");
}

std::vector<double> uniform_grid(int n) {
  if (n < 2) throw std::invalid_argument("a uniform grid needs at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[i] = static_cast<double>(i) / (n - 1);
  return g;
}

SweepSpec left_panel_sweep() {
  SweepSpec s;
  s.alpha_grid = {0.2, 0.5, 0.75, 0.9};
  s.t_grid = uniform_grid(201);
  return s;
}

SweepSpec right_panel_sweep() {
  SweepSpec s;
  s.alpha_grid = uniform_grid(201);
  s.t_grid = {0.2, 0.5, 1.0};
  s.t_outer = true;
  return s;
}

void cmd_sweep(const std::vector<SweepSpec>& specs, std::ostream& out) {
  for (const auto& s : specs) s.validate();
  CsvWriter csv(out);
  write_eval_header(csv);
  for (const auto& s : specs) {
    if (s.t_outer) {
      for (double t : s.t_grid)
        for (double a : s.alpha_grid) write_eval_row(csv, evaluate(t, a, s.engine, s.options));
    } else {
      for (double a : s.alpha_grid)
        for (double t : s.t_grid) write_eval_row(csv, evaluate(t, a, s.engine, s.options));
    }
  }
}

void ContourSpec::validate() const {
  if (levels.empty()) throw std::invalid_argument("at least one contour level is required");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > 0.0 && levels[i] < 1.0)) {
      throw std::invalid_argument("contour levels must lie in (0,1)");
    }
    if (i > 0 && !(levels[i] > levels[i - 1])) {
      throw std::invalid_argument("contour levels must be strictly ascending");
    }
  }
  if (alpha_resolution < 1) throw std::invalid_argument("alpha resolution must be >= 1");
}

void cmd_contour(const ContourSpec& spec, std::ostream& out) {
  spec.validate();
  CsvWriter csv(out);
  csv.header({"lambda", "alpha", "t", "status"});
  for (double level : spec.levels) {
    csv.field(level).field(contour_start_alpha(level)).field(1.0).field("curve_start");
    csv.end_row();
    for (int i = 1; i <= spec.alpha_resolution; ++i) {
      const double alpha = static_cast<double>(i) / spec.alpha_resolution;
      const auto t = contour_solve_t(alpha, level);
      csv.field(level).field(alpha);
      if (t) {
        csv.field(*t).field("ok");
      } else {
        csv.field("").field("no_solution");
      }
      csv.end_row();
    }
  }
}

void cmd_simulate(const LatticeConfig& config, std::ostream& out) {
  const auto estimates = estimate_density(config);
  CsvWriter csv(out);
  csv.header({"time", "n_sites", "replicas", "rho_A_mean", "rho_A_stderr", "rho_B_mean",
              "rho_B_stderr", "rho_X_mean", "rho_X_stderr", "rho_A_closed", "z_A"});
  for (const auto& e : estimates) {
    const double closed = closed_form_rho_a(ModelParams(config.alpha, e.time));
    const double diff = e.mean.a - closed;
    const double z = diff == 0.0 ? 0.0 : diff / e.std_error.a;
    csv.field(e.time)
        .field(static_cast<unsigned long long>(e.n_sites))
        .field(static_cast<unsigned long long>(e.replicas))
        .field(e.mean.a)
        .field(e.std_error.a)
        .field(e.mean.b)
        .field(e.std_error.b)
        .field(e.mean.x)
        .field(e.std_error.x)
        .field(closed)
        .field(z);
    csv.end_row();
  }
}

void cmd_oracle(const OracleProblem& problem, std::ostream& out) {
  const auto occ = exact_occupation(problem);
  CsvWriter csv(out);
  csv.header({"n_sites", "boundary", "alpha", "t", "target", "p_A", "p_B", "p_X", "rho_A_closed",
              "gap", "truncation_bound"});
  csv.field(static_cast<unsigned long long>(problem.n_sites))
      .field(boundary_name(problem.boundary))
      .field(problem.alpha)
      .field(problem.t)
      .field(static_cast<unsigned long long>(problem.target_site))
      .field(occ.p_a)
      .field(occ.p_b)
      .field(occ.p_x);

  const bool centred_window = problem.boundary == Boundary::free && problem.n_sites % 2 == 1 &&
                              problem.target_site == problem.n_sites / 2 &&
                              problem.alpha > 0.0 && problem.alpha < 1.0;
  if (centred_window) {
    const double closed = closed_form_rho_a(ModelParams(problem.alpha, problem.t));
    const int half_width = static_cast<int>(problem.n_sites / 2);
    csv.field(closed).field(std::abs(occ.p_a - closed)).field(2.0 * prob_ordering(0, half_width, problem.t));
  } else {
    csv.field("").field("").field("");
  }
  csv.end_row();
}

}  // namespace abrsa::cli

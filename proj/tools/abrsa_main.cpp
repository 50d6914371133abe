// Command-line front end: eval, sweep, simulate, oracle, contour, verify.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "abrsa/commands.hpp"
#include "abrsa/errors.hpp"
#include "abrsa/verify.hpp"

namespace {

using namespace abrsa;
using namespace abrsa::cli;

// --output defaults to stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw std::invalid_argument("cannot open output file '" + path + "'");
    path_ = path;
  }

  std::ostream& stream() { return file_ ? *file_ : std::cout; }

  void close() {
    if (!file_) return;
    file_->close();
    if (!*file_) throw std::invalid_argument("failed writing output file '" + path_ + "'");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::string path_;
};

Boundary parse_boundary(const std::string& name) {
  if (name == "periodic") return Boundary::periodic;
  if (name == "free") return Boundary::free;
  throw std::invalid_argument("unknown boundary '" + name + "'");
}

struct LatticeFlags {
  std::size_t n_sites = 100000;
  std::string boundary = "periodic";
  std::uint64_t replicas = 8;
  std::uint64_t seed = kDefaultSeed;
  std::size_t margin = 0;
  unsigned threads = 0;

  void add_to(CLI::App* app) {
    app->add_option("--n", n_sites, "Lattice sites")->capture_default_str();
    app->add_option("--boundary", boundary, "periodic or free")->capture_default_str();
    app->add_option("--replicas", replicas, "Independent replicas")->capture_default_str();
    app->add_option("--seed", seed, "Master seed")->capture_default_str();
    app->add_option("--margin", margin, "Free boundary: sites excluded from each end")->capture_default_str();
    app->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
  }

  LatticeConfig config(double alpha, std::vector<double> times) const {
    LatticeConfig c;
    c.n_sites = n_sites;
    c.boundary = parse_boundary(boundary);
    c.alpha = alpha;
    c.sample_times = std::move(times);
    c.replicas = replicas;
    c.master_seed = seed;
    c.bulk_margin = margin;
    c.threads = threads;
    return c;
  }
};

struct EngineFlags {
  std::string engine = "closed_form";
  int max_index = 25;
  double quad_tol = 1e-12;
  LatticeFlags lattice;

  void add_to(CLI::App* app) {
    app->add_option("--engine", engine, "closed_form, event_sum, integral or simulate")->capture_default_str();
    app->add_option("--max-index", max_index, "event_sum truncation index")->capture_default_str();
    app->add_option("--tol", quad_tol, "integral absolute tolerance")->capture_default_str();
    lattice.add_to(app);
  }

  EngineOptions options() const {
    EngineOptions o;
    o.max_index = max_index;
    o.quad_tol = quad_tol;
    o.lattice = lattice.config(0.5, {1.0});
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-dimensional AB random sequential adsorption, one attempt per site"};
  app.require_subcommand(1);
  std::string output;
  app.add_option("-o,--output", output, "Output file (default stdout)");

  // eval
  auto* eval = app.add_subcommand("eval", "Densities at one (t, alpha)");
  double eval_t = 1.0, eval_alpha = 0.5;
  EngineFlags eval_flags;
  eval->add_option("--t", eval_t, "Time in [0,1]")->required();
  eval->add_option("--alpha", eval_alpha, "Probability of species A in [0,1]")->required();
  eval_flags.add_to(eval);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Density grid over (t, alpha)");
  std::vector<double> sweep_alphas, sweep_ts;
  int alpha_steps = 0, t_steps = 0;
  std::string panel = "both";
  EngineFlags sweep_flags;
  sweep->add_option("--alphas", sweep_alphas, "Comma-separated alpha grid")->delimiter(',');
  sweep->add_option("--ts", sweep_ts, "Comma-separated t grid")->delimiter(',');
  sweep->add_option("--alpha-steps", alpha_steps, "Uniform alpha grid with this many points");
  sweep->add_option("--t-steps", t_steps, "Uniform t grid with this many points");
  sweep->add_option("--panel", panel, "Default grids: left, right or both")->capture_default_str();
  sweep_flags.add_to(sweep);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo densities on a finite lattice");
  double sim_alpha = 0.5;
  std::vector<double> sim_times = {1.0};
  LatticeFlags sim_flags;
  simulate->add_option("--alpha", sim_alpha, "Probability of species A")->required();
  simulate->add_option("--times", sim_times, "Ascending sample times")->delimiter(',')->capture_default_str();
  sim_flags.add_to(simulate);

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exact site occupation by enumeration");
  std::size_t oracle_n = 1, oracle_target = 0;
  int oracle_window = 0;
  double oracle_alpha = 0.5, oracle_t = 1.0;
  bool oracle_free = false, oracle_periodic = false;
  oracle->add_option("--n", oracle_n, "Lattice sites (<= 12)");
  oracle->add_option("--target", oracle_target, "Target site index");
  oracle->add_option("--window", oracle_window, "Centred free window of this half width (<= 5)");
  oracle->add_option("--alpha", oracle_alpha, "Probability of species A")->required();
  oracle->add_option("--t", oracle_t, "Time in [0,1]")->required();
  auto* free_flag = oracle->add_flag("--free", oracle_free, "Free boundary (default)");
  oracle->add_flag("--periodic", oracle_periodic, "Periodic boundary")->excludes(free_flag);

  // contour
  auto* contour = app.add_subcommand("contour", "Level sets rho_A(t; alpha) = lambda");
  ContourSpec contour_spec;
  contour->add_option("--levels", contour_spec.levels, "Strictly ascending levels in (0,1)")
      ->delimiter(',')
      ->capture_default_str();
  contour->add_option("--alpha-resolution", contour_spec.alpha_resolution, "Alpha points per curve")
      ->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "Cross-engine verification suite");
  std::string tier = "fast";
  verify->add_option("--tier", tier, "fast or full")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidArguments;
  }

  try {
    Output out(output);
    int code = kSuccess;
    if (eval->parsed()) {
      cmd_eval(eval_t, eval_alpha, parse_engine(eval_flags.engine), eval_flags.options(), out.stream());
    } else if (sweep->parsed()) {
      std::vector<SweepSpec> specs;
      const bool custom = !sweep_alphas.empty() || !sweep_ts.empty() || alpha_steps > 0 || t_steps > 0;
      if (custom) {
        SweepSpec s;
        s.alpha_grid = alpha_steps > 0 ? uniform_grid(alpha_steps) : sweep_alphas;
        s.t_grid = t_steps > 0 ? uniform_grid(t_steps) : sweep_ts;
        specs.push_back(std::move(s));
      } else if (panel == "left" || panel == "both") {
        specs.push_back(left_panel_sweep());
        if (panel == "both") specs.push_back(right_panel_sweep());
      } else if (panel == "right") {
        specs.push_back(right_panel_sweep());
      } else {
        throw std::invalid_argument("unknown panel '" + panel + "'");
      }
      for (auto& s : specs) {
        s.engine = parse_engine(sweep_flags.engine);
        s.options = sweep_flags.options();
      }
      cmd_sweep(specs, out.stream());
    } else if (simulate->parsed()) {
      cmd_simulate(sim_flags.config(sim_alpha, sim_times), out.stream());
    } else if (oracle->parsed()) {
      OracleProblem problem{oracle_n, oracle_periodic ? Boundary::periodic : Boundary::free,
                            oracle_alpha, oracle_t, oracle_target};
      if (oracle_window > 0) {
        if (oracle_window > kWindowMaxHalfWidth) {
          throw size_cap_error("window half width is capped at " + std::to_string(kWindowMaxHalfWidth));
        }
        if (oracle_periodic) throw std::invalid_argument("a window is always a free path");
        problem.n_sites = 2 * static_cast<std::size_t>(oracle_window) + 1;
        problem.target_site = static_cast<std::size_t>(oracle_window);
      }
      cmd_oracle(problem, out.stream());
    } else if (contour->parsed()) {
      cmd_contour(contour_spec, out.stream());
    } else if (verify->parsed()) {
      code = cmd_verify(parse_tier(tier), out.stream());
    }
    out.stream().flush();
    out.close();
    return code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const std::exception& e) {
    std::cerr << "engine failure: " << e.what() << '\n';
    return kEngineFailure;
  }
}

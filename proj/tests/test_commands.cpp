#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <sstream>
#include <string>
#include <vector>

#include "abrsa/analytic.hpp"
#include "abrsa/commands.hpp"
#include "abrsa/verify.hpp"

using namespace abrsa;
using namespace abrsa::cli;

namespace {

using Row = std::vector<std::string>;

std::vector<Row> parse_csv(const std::string& text) {
  std::vector<Row> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    Row row;
    std::string cell;
    std::istringstream cells(line);
    while (std::getline(cells, cell, ',')) row.push_back(cell);
    if (!line.empty() && line.back() == ',') row.emplace_back();
    rows.push_back(row);
  }
  return rows;
}

double num(const std::string& s) { return std::stod(s); }

}  // namespace

TEST_CASE("engine names round-trip") {
  for (Engine e : {Engine::closed_form, Engine::event_sum, Engine::integral, Engine::simulate}) {
    CHECK(parse_engine(engine_name(e)) == e);
  }
  CHECK_THROWS_AS(parse_engine("magic"), std::invalid_argument);
}

TEST_CASE("eval writes one record") {
  std::ostringstream out;
  cmd_eval(1.0, 0.5, Engine::closed_form, {}, out);
  const auto rows = parse_csv(out.str());
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == Row{"t", "alpha", "rho_A", "rho_B", "rho_X", "engine", "diag1", "diag2"});
  CHECK(num(rows[1][2]) == doctest::Approx(0.5 * (1.0 - std::exp(-1.0))).epsilon(1e-15));
  CHECK(rows[1][5] == "closed_form");
}

TEST_CASE("engines agree with each other") {
  const EngineOptions opts;
  const auto closed = evaluate(0.8, 0.3, Engine::closed_form, opts);
  const auto events = evaluate(0.8, 0.3, Engine::event_sum, opts);
  const auto integral = evaluate(0.8, 0.3, Engine::integral, opts);
  CHECK(std::abs(events.rho_a - closed.rho_a) <= 1e-12);
  CHECK(events.diag1 < 1e-12);
  CHECK(std::abs(integral.rho_a - closed.rho_a) <= 1e-10);
  CHECK(std::abs(integral.rho_b - closed.rho_b) <= 1e-10);
  CHECK(closed.rho_a + closed.rho_b + closed.rho_x == doctest::Approx(1.0).epsilon(1e-14));

  EngineOptions small = opts;
  small.lattice.n_sites = 20000;
  small.lattice.replicas = 4;
  const auto sim = evaluate(0.8, 0.3, Engine::simulate, small);
  CHECK(std::abs(sim.rho_a - closed.rho_a) <= 5.0 * sim.diag1);

  for (Engine e : {Engine::closed_form, Engine::event_sum, Engine::integral}) {
    const auto pure = evaluate(0.6, 1.0, e, opts);
    CHECK(pure.rho_a == 0.6);
    CHECK(pure.rho_b == 0.0);
    CHECK(evaluate(0.6, 0.0, e, opts).rho_a == 0.0);
  }
  CHECK_THROWS_AS(evaluate(1.2, 0.5, Engine::closed_form, opts), std::invalid_argument);
}

TEST_CASE("standard sweeps") {
  std::ostringstream out;
  cmd_sweep({left_panel_sweep()}, out);
  const auto left = parse_csv(out.str());
  CHECK(left.size() == 1 + 4 * 201);
  // Alpha outer: each curve rises with t.
  for (std::size_t r = 2; r < left.size(); ++r) {
    if (left[r][1] == left[r - 1][1]) CHECK(num(left[r][2]) >= num(left[r - 1][2]));
  }

  std::ostringstream right_out;
  cmd_sweep({right_panel_sweep()}, right_out);
  const auto right = parse_csv(right_out.str());
  CHECK(right.size() == 1 + 3 * 201);
  for (std::size_t r = 2; r < right.size(); ++r) {
    if (right[r][0] == right[r - 1][0]) CHECK(num(right[r][2]) >= num(right[r - 1][2]));
  }
  CHECK(num(right[1][0]) == 0.2);
  CHECK(num(right[1][1]) == 0.0);

  SweepSpec zero{{0.0}, uniform_grid(11)};
  std::ostringstream zero_out;
  cmd_sweep({zero}, zero_out);
  for (std::size_t r = 1; r < 12; ++r) CHECK(num(parse_csv(zero_out.str())[r][2]) == 0.0);

  SweepSpec dup{{0.3, 0.3}, {1.0}};
  CHECK_THROWS_AS(dup.validate(), std::invalid_argument);
  CHECK_THROWS_AS((SweepSpec{{}, {1.0}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SweepSpec{{0.5}, {1.5}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS(uniform_grid(1), std::invalid_argument);
}

TEST_CASE("contour output") {
  std::ostringstream out;
  cmd_contour({}, out);
  const auto rows = parse_csv(out.str());
  CHECK(rows.size() == 1 + 5 * 201);
  CHECK(rows[0] == Row{"lambda", "alpha", "t", "status"});
  int ok = 0;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const double level = num(rows[r][0]), a = num(rows[r][1]);
    if (rows[r][3] == "ok" || rows[r][3] == "curve_start") {
      const double t = num(rows[r][2]);
      CHECK(std::abs(closed_form_rho_a(ModelParams(a, t)) - level) <= 1e-10);
      ++ok;
    } else {
      CHECK(rows[r][3] == "no_solution");
      CHECK(rows[r][2].empty());
      // No solution means even t = 1 falls short.
      CHECK(closed_form_rho_a(ModelParams(a, 1.0)) < level);
    }
  }
  CHECK(ok > 0);

  const auto t_top = contour_solve_t(1.0, 0.8);
  REQUIRE(t_top.has_value());
  CHECK(*t_top == doctest::Approx(0.8).epsilon(1e-10));
  CHECK_FALSE(contour_solve_t(0.5, 0.4).has_value());

  CHECK_THROWS_AS((ContourSpec{{0.4, 0.2}, 10}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ContourSpec{{0.0}, 10}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ContourSpec{{0.4}, 0}.validate()), std::invalid_argument);
}

TEST_CASE("simulate output is reproducible") {
  LatticeConfig c;
  c.n_sites = 5000;
  c.alpha = 0.7;
  c.sample_times = {0.5, 1.0};
  c.replicas = 4;
  std::ostringstream a, b;
  cmd_simulate(c, a);
  cmd_simulate(c, b);
  CHECK(a.str() == b.str());
  const auto rows = parse_csv(a.str());
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].size() == 11);
  CHECK(std::abs(num(rows[2][10])) < 5.0);

  c.alpha = 0.0;
  std::ostringstream none;
  cmd_simulate(c, none);
  for (const auto& row : parse_csv(none.str())) {
    if (row[0] == "time") continue;
    CHECK(num(row[3]) == 0.0);
    CHECK(num(row[10]) == 0.0);
  }
}

TEST_CASE("oracle output") {
  std::ostringstream out;
  cmd_oracle({9, Boundary::free, 0.5, 0.3, 4}, out);
  const auto rows = parse_csv(out.str());
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][1] == "free");
  CHECK(num(rows[1][5]) == doctest::Approx(0.1295909169034293).epsilon(1e-14));
  CHECK(num(rows[1][9]) <= num(rows[1][10]));

  std::ostringstream edge;
  cmd_oracle({4, Boundary::periodic, 0.5, 1.0, 0}, edge);
  const auto edge_rows = parse_csv(edge.str());
  REQUIRE(edge_rows.size() == 2);
  REQUIRE(edge_rows[1].size() == 11);
  CHECK(edge_rows[1][8].empty());
  CHECK(edge_rows[1][10].empty());
}

TEST_CASE("verification harness") {
  std::ostringstream out;
  CHECK(cmd_verify(VerifyTier::fast, out) == 0);
  CHECK(out.str().find("FAIL") == std::string::npos);
  CHECK(parse_tier("full") == VerifyTier::full);
  CHECK_THROWS_AS(parse_tier("slow"), std::invalid_argument);

  VerifyHooks broken;
  broken.closed_form = [](const ModelParams& p) { return closed_form_rho_a(p) + 1e-6; };
  std::ostringstream bad;
  CHECK(cmd_verify(VerifyTier::fast, bad, broken) == 4);
  CHECK(bad.str().find("FAIL closed_form_vs_quadrature") != std::string::npos);
}

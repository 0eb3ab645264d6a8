#include <doctest.h>

#include <clocale>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "reins/commands.hpp"
#include "reins/config.hpp"
#include "reins/errors.hpp"

using namespace reins;

namespace {

RunConfig base_run(Command c) {
  RunConfig cfg;
  cfg.command = c;
  cfg.model = parse_config(kDefaultConfigText);
  return cfg;
}

double num(const Table::Cell& c) { return std::get<double>(c); }
std::string str(const Table::Cell& c) { return std::get<std::string>(c); }

int column(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (t.columns[i] == name) return static_cast<int>(i);
  }
  FAIL("missing column " << name);
  return -1;
}

}  // namespace

TEST_CASE("default config is the reference parameter set") {
  const ModelConfig cfg = parse_config(kDefaultConfigText);
  const MarketParams ref = base_params();
  CHECK(cfg.t == 0.0);
  CHECK(cfg.params.T == ref.T);
  CHECK(cfg.params.theta == ref.theta);
  CHECK(cfg.params.eta == ref.eta);
  CHECK(cfg.params.lambda == ref.lambda);
  CHECK(cfg.params.claims.is_exponential());
  CHECK(cfg.params.claims.beta() == 1.0);
  CHECK(cfg.params.x0_I == 1.0);
  CHECK(cfg.params.x0_R2 == 10.0);
  CHECK(cfg.params.gamma_R1 == 0.1);
  CHECK(cfg.params.acc_R2(0.0) == doctest::Approx(std::exp(0.8)));
  CHECK(cfg.params.bound_convention == BoundConvention::Section4);
}

TEST_CASE("config parsing") {
  const ModelConfig c = parse_config(
      "# comment\n\nmu = 4\nrho_I = [(0,0.1),(4,0.2)]\ngamma_R1 = 0.3  # trailing\nclaims = exponential\n"
      "bound_convention = definition21\nalpha = 0.5\nsigma = 1\n");
  CHECK(c.params.claims.beta() == doctest::Approx(0.25));
  CHECK(c.params.acc_I(0.0) == doctest::Approx(std::exp(1.2)));
  CHECK(c.params.gamma_R1 == 0.3);
  CHECK(c.params.bound_convention == BoundConvention::Definition21);

  const ModelConfig u = parse_config("claims = uniform(0,2)\n");
  CHECK_FALSE(u.params.claims.is_exponential());
  CHECK(std::abs(u.params.claims.mean() - 1.0) < 1e-8);
}

TEST_CASE("config errors name the offending line") {
  auto message = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("beta = 1\nthis is wrong\n").find("line 2") != std::string::npos);
  CHECK(message("beta = 1\n\nfoo = 3\n").find("line 3") != std::string::npos);
  CHECK(message("gamma_I = abc\n").find("line 1") != std::string::npos);
  CHECK(message("beta = 1\nrho_R1 = [(1,0.1)]\n").find("line 2") != std::string::npos);
  CHECK(message("claims = pareto\n").find("line 1") != std::string::npos);
  CHECK(message("gamma_I = -1\n").find("gamma_I") != std::string::npos);
  CHECK(message("beta = 1\nmu = 1\n") != "no error");
  CHECK(message("t = 9\n") != "no error");
}

TEST_CASE("rate curve literals") {
  const RateCurve c = parse_rate_curve("[ (0, 0.1), (2.5,0.3) ]", 8.0);
  REQUIRE(c.segments().size() == 2);
  CHECK(c.rate_at(3.0) == 0.3);
  CHECK_THROWS_AS(parse_rate_curve("(0,0.1)", 8.0), ConfigError);
  CHECK_THROWS_AS(parse_rate_curve("[(0,x)]", 8.0), ConfigError);
  CHECK_THROWS_AS(parse_rate_curve("[]", 8.0), ConfigError);
}

TEST_CASE("grid and command parsing") {
  const Grid g = parse_grid("0:8:5");
  CHECK(g.n == 5);
  CHECK(g.at(0) == 0.0);
  CHECK(g.at(4) == 8.0);
  CHECK(g.at(1) == 2.0);
  CHECK(parse_grid("2:2:1").at(0) == 2.0);
  CHECK_THROWS_AS(parse_grid("0:8"), ConfigError);
  CHECK_THROWS_AS(parse_grid("a:8:3"), ConfigError);
  CHECK_THROWS_AS(parse_grid("0:8:0"), ConfigError);
  CHECK(parse_command("sweep") == Command::Sweep);
  CHECK_THROWS_AS(parse_command("plot"), ConfigError);
  CHECK(is_sweep_param("rho_R2"));
  CHECK_FALSE(is_sweep_param("theta"));
}

TEST_CASE("number formatting is locale independent with 9 significant digits") {
  std::setlocale(LC_ALL, "de_DE.UTF-8");
  CHECK(format_number(0.28269152843) == "0.282691528");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(-1.5e-12) == "-1.5e-12");
  CHECK(format_number(123456789.4) == "123456789");
  std::setlocale(LC_ALL, "C");
}

TEST_CASE("CSV and JSON mirror each other") {
  Table t;
  t.columns = {"a", "b"};
  t.rows = {{1.5, std::string("x")}, {0.1, std::string("y")}};
  std::ostringstream csv;
  write_csv(csv, t);
  CHECK(csv.str() == "a,b\n1.5,x\n0.1,y\n");
  std::ostringstream js;
  write_json(js, t);
  const auto parsed = nlohmann::json::parse(js.str());
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0]["a"] == 1.5);
  CHECK(parsed[1]["b"] == "y");

  Table empty;
  empty.columns = {"only"};
  std::ostringstream e;
  write_csv(e, empty);
  CHECK(e.str() == "only\n");
}

TEST_CASE("with_param") {
  const MarketParams p = base_params();
  CHECK(with_param(p, "mu", 4.0).claims.beta() == doctest::Approx(0.25));
  CHECK(with_param(p, "gamma_R2", 0.3).gamma_R2 == 0.3);
  CHECK(with_param(p, "rho_R1", 0.2).acc_R1(0.0) == doctest::Approx(std::exp(1.6)));
  CHECK_THROWS_AS(with_param(p, "theta", 0.2), ConfigError);
}

TEST_CASE("equilibrium report") {
  const Table t = run_equilibrium(base_run(Command::Equilibrium));
  REQUIRE(t.rows.size() == 1);
  const auto& r = t.rows[0];
  CHECK(std::abs(num(r[column(t, "xi1")]) - 0.28269) < 5e-5);
  CHECK(std::abs(num(r[column(t, "xi2")]) - 0.38225) < 5e-5);
  CHECK(std::abs(num(r[column(t, "q")]) - 0.2825) < 5e-4);
  CHECK(std::abs(num(r[column(t, "d")]) - 2.3936) < 5e-4);
  CHECK(std::abs(num(r[column(t, "cap")]) - 0.6761) < 5e-4);
  CHECK(std::abs(num(r[column(t, "retention_limit")]) - 1.7175) < 5e-4);
  CHECK(str(r[column(t, "regime")]) == "Interior");
  CHECK(std::abs(num(r[column(t, "foc_r1")])) < 1e-8);

  RunConfig low = base_run(Command::Equilibrium);
  low.model.params = with_param(low.model.params, "beta", 0.2);
  const Table l = run_equilibrium(low);
  CHECK(str(l.rows[0][column(l, "regime")]) == "UpperRight");
  CHECK(num(l.rows[0][column(l, "xi1")]) == doctest::Approx(0.18));
  CHECK(num(l.rows[0][column(l, "xi2")]) == doctest::Approx(0.9));
}

TEST_CASE("trajectory") {
  RunConfig cfg = base_run(Command::Trajectory);
  cfg.grid = parse_grid("0:8:81");
  const Table t = run_trajectory(cfg);
  REQUIRE(t.rows.size() == 81);
  CHECK(t.columns == std::vector<std::string>{"t", "xi1", "xi2", "q", "d", "cap", "p1", "p2", "B_I", "B_R1", "B_R2"});
  CHECK(std::abs(num(t.rows.front()[7]) - 0.1262) < 1.5e-3);
  CHECK(std::abs(num(t.rows.back()[7]) - 0.1070) < 1.5e-3);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(std::abs(num(t.rows[i][3]) - 0.2825) < 5e-4);
    const double p1 = num(t.rows[i][6]);
    CHECK(p1 >= 0.2);
    CHECK(p1 <= 0.35);
    if (i > 0) {
      CHECK(num(t.rows[i][1]) <= num(t.rows[i - 1][1]));
      CHECK(num(t.rows[i][2]) <= num(t.rows[i - 1][2]));
      CHECK(p1 < num(t.rows[i - 1][6]));
    }
  }
  const auto& last = t.rows.back();
  const EquilibriumResult e = solve_equilibrium(cfg.model.params, 8.0);
  CHECK(num(last[1]) == e.xi1_star);
  CHECK(num(last[2]) == e.xi2_star);
  CHECK(num(last[8]) == 0.0);
  CHECK(num(last[9]) == 0.0);
  CHECK(num(last[10]) == 0.0);
}

TEST_CASE("mu sweep regime changes") {
  RunConfig cfg = base_run(Command::Sweep);
  cfg.sweep_param = "mu";
  cfg.grid = parse_grid("0.1:4:3901");
  const Table t = run_sweep(cfg);
  const int reg = column(t, "regime");
  std::vector<double> changes;
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    if (str(t.rows[i][reg]) != str(t.rows[i - 1][reg])) changes.push_back(num(t.rows[i][0]));
  }
  REQUIRE(changes.size() == 4);
  const double expected[] = {0.2525, 0.3537, 2.3546, 3.1837};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(changes[i] - expected[i]) < 2e-3);
}

TEST_CASE("gamma and rho sweeps") {
  RunConfig cfg = base_run(Command::Sweep);
  cfg.sweep_param = "gamma_R1";
  cfg.grid = parse_grid("0.05:0.3:11");
  const Table g = run_sweep(cfg);
  for (std::size_t i = 1; i < g.rows.size(); ++i) CHECK(num(g.rows[i][1]) > num(g.rows[i - 1][1]));

  cfg.sweep_param = "rho_I";
  cfg.grid = parse_grid("0.02:0.2:10");
  const Table r = run_sweep(cfg);
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    CHECK(num(r.rows[i][column(r, "q")]) > num(r.rows[i - 1][column(r, "q")]));
    CHECK(num(r.rows[i][column(r, "d")]) < num(r.rows[i - 1][column(r, "d")]));
  }
}

TEST_CASE("sweep needs a valid parameter and grid") {
  RunConfig cfg = base_run(Command::Sweep);
  cfg.sweep_param = "theta";
  cfg.grid = parse_grid("0:1:2");
  CHECK_THROWS_AS(run_sweep(cfg), ConfigError);
  cfg.sweep_param = "beta";
  cfg.grid.reset();
  CHECK_THROWS_AS(run_sweep(cfg), ConfigError);
  cfg.grid = parse_grid("-1:1:3");
  CHECK_THROWS_AS(run_sweep(cfg), ConfigError);
}

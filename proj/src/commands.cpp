#include "reins/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "reins/errors.hpp"
#include "reins/expo_equilibrium.hpp"
#include "reins/parallel.hpp"
#include "reins/reaction_general.hpp"
#include "reins/valuation.hpp"

namespace reins {

namespace {

const std::vector<std::string> kSweepParams = {"beta",     "mu",    "gamma_I", "gamma_R1",
                                               "gamma_R2", "rho_I", "rho_R1",  "rho_R2"};

Grid default_time_grid(const MarketParams& p) { return {0.0, p.T, 81}; }

std::vector<Table::Cell> equilibrium_cells(const EquilibriumResult& e, const MarketParams& params) {
  const PremiumPoint pt = e.point();
  return {e.t,
          e.xi1_star,
          e.xi2_star,
          e.response.q,
          e.response.d,
          e.response.cap,
          e.response.retention_limit,
          regime_name(e.regime),
          foc_residual_r1(pt, params),
          foc_residual_r2(pt, params)};
}

}  // namespace

Grid parse_grid(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
  if (b == std::string::npos) throw ConfigError("grid must be start:stop:n, got '" + text + "'");
  Grid g;
  try {
    std::size_t used = 0;
    g.start = std::stod(text.substr(0, a), &used);
    g.stop = std::stod(text.substr(a + 1, b - a - 1));
    g.n = std::stoi(text.substr(b + 1));
  } catch (const std::exception&) {
    throw ConfigError("grid must be start:stop:n, got '" + text + "'");
  }
  if (g.n < 1) throw ConfigError("grid needs n >= 1");
  if (g.n > 1 && !(g.stop >= g.start)) throw ConfigError("grid needs stop >= start");
  return g;
}

Command parse_command(const std::string& name) {
  if (name == "equilibrium") return Command::Equilibrium;
  if (name == "trajectory") return Command::Trajectory;
  if (name == "sweep") return Command::Sweep;
  if (name == "simulate") return Command::Simulate;
  if (name == "validate") return Command::Validate;
  throw ConfigError("unknown command '" + name + "'");
}

bool is_sweep_param(const std::string& name) {
  return std::find(kSweepParams.begin(), kSweepParams.end(), name) != kSweepParams.end();
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (const auto* d = std::get_if<double>(&row[i])) {
        os << format_number(*d);
      } else {
        os << std::get<std::string>(row[i]);
      }
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& table) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (const auto* d = std::get_if<double>(&row[i])) {
        // Round through the CSV text so both formats carry identical values.
        const std::string s = format_number(*d);
        if (std::isfinite(*d)) {
          obj[table.columns[i]] = std::stod(s);
        } else {
          obj[table.columns[i]] = s;
        }
      } else {
        obj[table.columns[i]] = std::get<std::string>(row[i]);
      }
    }
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

MarketParams with_param(const MarketParams& params, const std::string& name, double value) {
  MarketParams p = params;
  if (name == "beta") {
    p.claims = ClaimDistribution::exponential(value);
  } else if (name == "mu") {
    if (!(value > 0.0)) throw DomainError("mu must be positive");
    p.claims = ClaimDistribution::exponential(1.0 / value);
  } else if (name == "gamma_I") {
    p.gamma_I = value;
  } else if (name == "gamma_R1") {
    p.gamma_R1 = value;
  } else if (name == "gamma_R2") {
    p.gamma_R2 = value;
  } else if (name == "rho_I") {
    p.rho_I = RateCurve::constant(value, p.T);
  } else if (name == "rho_R1") {
    p.rho_R1 = RateCurve::constant(value, p.T);
  } else if (name == "rho_R2") {
    p.rho_R2 = RateCurve::constant(value, p.T);
  } else {
    throw ConfigError("unknown sweep parameter '" + name + "'");
  }
  p.validate();
  return p;
}

Table run_equilibrium(const RunConfig& cfg) {
  const MarketParams& p = cfg.model.params;
  Table table;
  table.columns = {"t", "xi1", "xi2", "q", "d", "cap", "retention_limit", "regime", "foc_r1", "foc_r2"};
  table.rows.push_back(equilibrium_cells(solve_equilibrium(p, cfg.model.t), p));
  return table;
}

Table run_trajectory(const RunConfig& cfg) {
  const MarketParams& p = cfg.model.params;
  const Grid grid = cfg.grid.value_or(default_time_grid(p));
  const StrategyPath path = equilibrium_path(p);
  const ValueIntercept bI = value_intercept(Party::I, p, path);
  const ValueIntercept bR1 = value_intercept(Party::R1, p, path);
  const ValueIntercept bR2 = value_intercept(Party::R2, p, path);

  Table table;
  table.columns = {"t", "xi1", "xi2", "q", "d", "cap", "p1", "p2", "B_I", "B_R1", "B_R2"};
  table.rows.resize(static_cast<std::size_t>(grid.n));
  parallel_for(table.rows.size(), [&](std::size_t i) {
    const double t = grid.at(static_cast<int>(i));
    const EquilibriumResult e = solve_equilibrium(p, t);
    const PremiumRates rates = premium_rates(e.point(), e.response, p);
    table.rows[i] = {t,        e.xi1_star, e.xi2_star, e.response.q, e.response.d, e.response.cap,
                     rates.p1, rates.p2,   bI.B(t),    bR1.B(t),     bR2.B(t)};
  });
  return table;
}

Table run_sweep(const RunConfig& cfg) {
  if (!is_sweep_param(cfg.sweep_param)) {
    throw ConfigError("sweep needs --param one of beta, mu, gamma_I, gamma_R1, gamma_R2, rho_I, rho_R1, rho_R2");
  }
  if (!cfg.grid) throw ConfigError("sweep needs --grid start:stop:n");
  const Grid grid = *cfg.grid;
  Table table;
  table.columns = {cfg.sweep_param, "xi1", "xi2", "q", "d", "cap", "retention_limit", "regime", "xibar1", "xibar2"};
  table.rows.resize(static_cast<std::size_t>(grid.n));
  parallel_for(table.rows.size(), [&](std::size_t i) {
    const double v = grid.at(static_cast<int>(i));
    MarketParams p;
    try {
      p = with_param(cfg.model.params, cfg.sweep_param, v);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("sweep value rejected: ") + e.what());
    }
    const EquilibriumResult e = solve_equilibrium(p, cfg.model.t);
    table.rows[i] = {v,
                     e.xi1_star,
                     e.xi2_star,
                     e.response.q,
                     e.response.d,
                     e.response.cap,
                     e.response.retention_limit,
                     regime_name(e.regime),
                     e.unconstrained.xi1,
                     e.unconstrained.xi2};
  });
  return table;
}

Table run_simulate(const RunConfig& cfg) {
  const MarketParams& p = cfg.model.params;
  const StrategyPath path = equilibrium_path(p);
  const TerminalSamples samples = simulate(path, p, cfg.sim);
  if (!cfg.dump_path.empty()) {
    std::ofstream dump(cfg.dump_path);
    if (!dump) throw ConfigError("cannot open dump file '" + cfg.dump_path + "'");
    dump << "path,x_I,x_R1,x_R2\n";
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& s = samples.paths[i];
      dump << i << ',' << format_number(s.x_I) << ',' << format_number(s.x_R1) << ',' << format_number(s.x_R2)
           << '\n';
    }
  }
  const auto est = estimate_objectives(samples, p);
  Table table;
  table.columns = {"party", "mean",    "variance",    "J",           "se_mean", "se_variance",
                   "se_J",  "cf_mean", "cf_variance", "cf_J",        "z_J"};
  for (const auto& e : est) {
    const Party party = e.value.party;
    const ObjectiveValue cf = closed_form_objective(party, path, p, 0.0, party_initial_surplus(p, party));
    const double z = e.se_J > 0.0 ? (e.value.J - cf.J) / e.se_J : 0.0;
    table.rows.push_back({std::string(party_name(party)), e.value.mean, e.value.variance, e.value.J, e.se_mean,
                          e.se_variance, e.se_J, cf.mean, cf.variance, cf.J, z});
  }
  return table;
}

}  // namespace reins

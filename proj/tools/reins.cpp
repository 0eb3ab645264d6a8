#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "reins/commands.hpp"
#include "reins/config.hpp"
#include "reins/errors.hpp"
#include "reins/validate.hpp"

namespace {

constexpr int kExitInvariantFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

int run(const reins::RunConfig& cfg) {
  std::ostringstream out;
  int code = 0;
  if (cfg.command == reins::Command::Validate) {
    const reins::ValidationReport report =
        reins::run_validation(cfg.model.params, reins::tolerance_scale_from_env());
    out << report.to_json() << '\n';
    if (!report.ok()) {
      for (const auto& f : report.failures()) std::cerr << "FAILED " << f << '\n';
      code = kExitInvariantFailed;
    }
  } else {
    reins::Table table;
    switch (cfg.command) {
      case reins::Command::Equilibrium: table = reins::run_equilibrium(cfg); break;
      case reins::Command::Trajectory: table = reins::run_trajectory(cfg); break;
      case reins::Command::Sweep: table = reins::run_sweep(cfg); break;
      case reins::Command::Simulate: table = reins::run_simulate(cfg); break;
      case reins::Command::Validate: break;
    }
    if (cfg.format == reins::OutputFormat::Json) {
      reins::write_json(out, table);
    } else {
      reins::write_csv(out, table);
    }
  }

  if (cfg.out_path.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) throw reins::ConfigError("cannot open output file '" + cfg.out_path + "'");
    file << out.str();
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium solver for the two-reinsurer premium game"};
  std::string config_path;
  std::string command = "equilibrium";
  std::string format = "csv";
  std::string grid;
  std::optional<double> t;
  reins::RunConfig cfg;

  app.add_option("--config", config_path, "Config file (flat name = value); defaults to the built-in base set");
  app.add_option("--command", command, "equilibrium | trajectory | sweep | simulate | validate");
  app.add_option("--out", cfg.out_path, "Write output here instead of stdout");
  app.add_option("--format", format, "csv | json");
  app.add_option("--grid", grid, "start:stop:n (time grid for trajectory, parameter grid for sweep)");
  app.add_option("--param", cfg.sweep_param, "Sweep parameter");
  app.add_option("--paths", cfg.sim.paths, "Monte Carlo paths");
  app.add_option("--seed", cfg.sim.seed, "Monte Carlo seed");
  app.add_option("--dump", cfg.dump_path, "simulate: write terminal surpluses per path to this CSV");
  app.add_option("--t", t, "Evaluation time (overrides the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    cfg.command = reins::parse_command(command);
    if (format == "csv") {
      cfg.format = reins::OutputFormat::Csv;
    } else if (format == "json") {
      cfg.format = reins::OutputFormat::Json;
    } else {
      throw reins::ConfigError("unknown format '" + format + "'");
    }
    cfg.model = config_path.empty() ? reins::parse_config(reins::kDefaultConfigText) : reins::load_config(config_path);
    if (t) cfg.model.t = *t;
    if (!(cfg.model.t >= 0.0 && cfg.model.t <= cfg.model.params.T)) {
      throw reins::ConfigError("t must lie in [0, T]");
    }
    if (!grid.empty()) cfg.grid = reins::parse_grid(grid);
    try {
      cfg.sim.validate();
    } catch (const reins::DomainError& e) {
      throw reins::ConfigError(e.what());
    }
    return run(cfg);
  } catch (const reins::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const reins::Error& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "reins/config.hpp"
#include "reins/montecarlo.hpp"

namespace reins {

enum class Command { Equilibrium, Trajectory, Sweep, Simulate, Validate };
enum class OutputFormat { Csv, Json };

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int n = 0;
  double at(int i) const { return n == 1 ? start : start + (stop - start) * i / (n - 1); }
};

/// Parses `start:stop:n`.
Grid parse_grid(const std::string& text);

struct RunConfig {
  Command command = Command::Equilibrium;
  ModelConfig model;
  std::string sweep_param;
  std::optional<Grid> grid;
  SimConfig sim;
  std::string out_path;
  std::string dump_path;
  OutputFormat format = OutputFormat::Csv;
};

Command parse_command(const std::string& name);
bool is_sweep_param(const std::string& name);

/// Rows of numbers or labels under fixed column names.
struct Table {
  using Cell = std::variant<double, std::string>;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// 9 significant digits, '.' decimal separator, independent of the locale.
std::string format_number(double v);
void write_csv(std::ostream& os, const Table& table);
/// One JSON object per row, keys equal to the CSV header.
void write_json(std::ostream& os, const Table& table);

Table run_equilibrium(const RunConfig& cfg);
Table run_trajectory(const RunConfig& cfg);
Table run_sweep(const RunConfig& cfg);
Table run_simulate(const RunConfig& cfg);

/// Copy of `params` with one sweep parameter set to `value`.
MarketParams with_param(const MarketParams& params, const std::string& name, double value);

}  // namespace reins

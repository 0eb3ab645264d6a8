#pragma once

#include <string>
#include <vector>

#include "reins/market_model.hpp"

namespace reins {

struct ValidationCheck {
  enum class Status { Pass, Fail, Skip };
  std::string name;
  Status status = Status::Pass;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool ok() const;
  std::vector<std::string> failures() const;
  std::string to_json() const;
};

/// Runs the invariant suite on `params` plus the reference-value checks on the
/// built-in parameter set. Every numeric tolerance is multiplied by `tol_scale`.
ValidationReport run_validation(const MarketParams& params, double tol_scale = 1.0);

/// Tolerance multiplier from the REINS_TOL environment variable (1 when unset).
/// Throws ConfigError for a malformed value.
double tolerance_scale_from_env();

}  // namespace reins

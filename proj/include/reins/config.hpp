#pragma once

#include <string>
#include <string_view>

#include "reins/market_model.hpp"

namespace reins {

/// Market parameters plus the evaluation time read from a flat `name = value` file.
struct ModelConfig {
  MarketParams params;
  double t = 0.0;
};

/// The shipped default: the reference numerical-study parameter set.
extern const std::string_view kDefaultConfigText;

/// Parses config text. Keys left out keep their defaults. Throws ConfigError
/// naming the offending line, or when the resulting parameters are invalid.
ModelConfig parse_config(std::string_view text);
ModelConfig load_config(const std::string& path);

/// Parses a rate-curve literal like `[(0,0.1),(4,0.2)]`.
RateCurve parse_rate_curve(std::string_view text, double horizon);

}  // namespace reins

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "reins/market_model.hpp"
#include "reins/valuation.hpp"

namespace reins {

struct SimConfig {
  std::size_t paths = 100000;
  std::uint64_t seed = 20240101;
  /// Premium-flow quadrature step; 0 selects T / 8000.
  double step = 0.0;
  unsigned workers = 0;

  void validate() const;
};

struct TerminalSample {
  double x_I = 0.0;
  double x_R1 = 0.0;
  double x_R2 = 0.0;
};

struct TerminalSamples {
  std::vector<TerminalSample> paths;
  /// Sum of all simulated claim sizes across paths.
  double total_claims = 0.0;
  /// Sum of retained + l1 + l2 jumps across paths.
  double total_jumps = 0.0;
  /// Largest |retained + l1 + l2 - y| over all simulated claims.
  double max_split_error = 0.0;

  std::size_t size() const { return paths.size(); }
};

/// Counter-based generator: the stream for (seed, path) is fixed, so serial and
/// parallel runs produce the same bits.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  SplitMix64(std::uint64_t seed, std::uint64_t stream);
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t state_;
};

/// Exact-event simulation of the three terminal surpluses.
TerminalSamples simulate(const StrategyPath& path, const MarketParams& params, const SimConfig& config);

struct ObjectiveEstimate {
  ObjectiveValue value;
  double se_mean = 0.0;
  double se_variance = 0.0;
  double se_J = 0.0;
};

/// Per-party sample mean/variance, J = mean - gamma/2 variance, and standard
/// errors (variance SE from the fourth central moment, J SE by the delta method).
std::array<ObjectiveEstimate, 3> estimate_objectives(const TerminalSamples& samples, const MarketParams& params);

}  // namespace reins

#include <doctest.h>

#include <cmath>
#include <cstring>

#include "reins/errors.hpp"
#include "reins/montecarlo.hpp"

using namespace reins;

namespace {

constexpr Party kParties[] = {Party::I, Party::R1, Party::R2};

double pick(const TerminalSample& s, Party k) {
  switch (k) {
    case Party::I: return s.x_I;
    case Party::R1: return s.x_R1;
    case Party::R2: return s.x_R2;
  }
  return 0.0;
}

MarketParams zero_rate_params(double T) {
  MarketParams p = base_params();
  p.T = T;
  p.rho_I = RateCurve::constant(0.0, T);
  p.rho_R1 = RateCurve::constant(0.0, T);
  p.rho_R2 = RateCurve::constant(0.0, T);
  return p;
}

SimConfig config(std::size_t paths, std::uint64_t seed) {
  SimConfig c;
  c.paths = paths;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("generator streams") {
  SplitMix64 a(1, 0);
  SplitMix64 b(1, 0);
  SplitMix64 c(1, 1);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    differs = differs || x != c();
  }
  CHECK(differs);
  SplitMix64 u(7, 3);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double v = u.uniform();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
    sum += v;
  }
  CHECK(std::abs(sum / 100000 - 0.5) < 0.005);
}

TEST_CASE("no claims gives the deterministic closed form") {
  MarketParams p = base_params();
  p.lambda = 0.0;
  const StrategyPath path = constant_loading_path(p, 0.3, 0.4);
  const TerminalSamples s = simulate(path, p, config(50, 3));
  for (Party k : kParties) {
    const ObjectiveValue cf = closed_form_objective(k, path, p, 0.0, party_initial_surplus(p, k));
    for (const auto& row : s.paths) CHECK(std::abs(pick(row, k) - cf.mean) < 1e-9);
  }
  for (const auto& e : estimate_objectives(s, p)) {
    CHECK(e.value.variance == 0.0);
    CHECK(e.se_mean == 0.0);
    CHECK(e.se_variance == 0.0);
    CHECK(e.se_J == 0.0);
  }
}

TEST_CASE("no reinsurance matches compound Poisson moments") {
  const MarketParams p = zero_rate_params(1.0);
  const TerminalSamples s = simulate(no_reinsurance_path(), p, config(100000, 99));
  const auto est = estimate_objectives(s, p);
  const ObjectiveEstimate& ins = est[0];
  CHECK(ins.value.party == Party::I);
  CHECK(std::abs(ins.value.mean - p.x0_I - 0.1) <= 3 * ins.se_mean);
  CHECK(std::abs(ins.value.variance - 2.0) <= 3 * ins.se_variance);
  CHECK(std::abs(ins.value.J - p.x0_I) <= 3 * ins.se_J);
}

TEST_CASE("same seed gives bit-identical samples regardless of workers") {
  const MarketParams p = base_params();
  const StrategyPath path = equilibrium_path(p, 101);
  SimConfig a = config(2000, 5);
  SimConfig b = a;
  a.workers = 1;
  b.workers = 3;
  const TerminalSamples x = simulate(path, p, a);
  const TerminalSamples y = simulate(path, p, b);
  const TerminalSamples z = simulate(path, p, a);
  REQUIRE(x.size() == y.size());
  CHECK(std::memcmp(x.paths.data(), y.paths.data(), x.size() * sizeof(TerminalSample)) == 0);
  CHECK(std::memcmp(x.paths.data(), z.paths.data(), x.size() * sizeof(TerminalSample)) == 0);
  const TerminalSamples w = simulate(path, p, config(2000, 6));
  CHECK(std::memcmp(x.paths.data(), w.paths.data(), x.size() * sizeof(TerminalSample)) != 0);
}

TEST_CASE("claims are split exactly between the three parties") {
  const MarketParams p = base_params();
  const TerminalSamples s = simulate(equilibrium_path(p, 101), p, config(5000, 8));
  CHECK(s.max_split_error < 1e-12);
  CHECK(std::abs(s.total_jumps - s.total_claims) <= 1e-9 * std::max(1.0, s.total_claims));
  CHECK(s.total_claims > 0.0);
}

TEST_CASE("equilibrium objectives agree with the closed form") {
  const MarketParams p = base_params();
  const StrategyPath path = equilibrium_path(p);
  const auto est = estimate_objectives(simulate(path, p, config(100000, 2024)), p);
  for (const auto& e : est) {
    const ObjectiveValue cf =
        closed_form_objective(e.value.party, path, p, 0.0, party_initial_surplus(p, e.value.party));
    CHECK(std::abs(e.value.J - cf.J) <= 3 * e.se_J);
    CHECK(std::abs(e.value.mean - cf.mean) <= 3 * e.se_mean);
    CHECK(std::abs(e.value.variance - cf.variance) <= 3 * e.se_variance);
  }
}

TEST_CASE("off-equilibrium strategies agree with the closed form") {
  const MarketParams p = base_params();
  for (auto [xi1, xi2] : {std::pair{0.15, 0.8}, std::pair{0.7, 0.12}}) {
    const StrategyPath path = constant_loading_path(p, xi1, xi2);
    const auto est = estimate_objectives(simulate(path, p, config(40000, 77)), p);
    for (const auto& e : est) {
      const ObjectiveValue cf =
          closed_form_objective(e.value.party, path, p, 0.0, party_initial_surplus(p, e.value.party));
      CHECK(std::abs(e.value.mean - cf.mean) <= 3 * e.se_mean);
    }
  }
}

TEST_CASE("half samples are consistent with the pooled estimate") {
  const MarketParams p = base_params();
  const TerminalSamples all = simulate(equilibrium_path(p, 201), p, config(100000, 31));
  TerminalSamples first;
  TerminalSamples second;
  first.paths.assign(all.paths.begin(), all.paths.begin() + 50000);
  second.paths.assign(all.paths.begin() + 50000, all.paths.end());
  const auto pooled = estimate_objectives(all, p);
  const auto a = estimate_objectives(first, p);
  const auto b = estimate_objectives(second, p);
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(a[k].value.J - b[k].value.J) <= 3 * std::hypot(a[k].se_J, b[k].se_J));
    CHECK(std::abs(0.5 * (a[k].value.mean + b[k].value.mean) - pooled[k].value.mean) < 1e-9 *
                                                                                          std::abs(pooled[k].value.mean));
  }
}

TEST_CASE("simulation input validation") {
  const MarketParams p = base_params();
  CHECK_THROWS_AS(simulate(no_reinsurance_path(), p, config(0, 1)), DomainError);
  const TerminalSamples one = simulate(no_reinsurance_path(), p, config(1, 1));
  CHECK_THROWS_AS(estimate_objectives(one, p), DomainError);
}

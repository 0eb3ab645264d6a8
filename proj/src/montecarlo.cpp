#include "reins/montecarlo.hpp"

#include <cmath>

#include "reins/errors.hpp"
#include "reins/insurer_response.hpp"
#include "reins/parallel.hpp"

namespace reins {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct DeterministicPart {
  double I;
  double R1;
  double R2;
};

// A_k(0) x0_k + ∫_0^T A_k(s) flow_k(s) ds by the trapezoid rule.
DeterministicPart deterministic_part(const StrategyPath& path, const MarketParams& params, double step) {
  const int n = std::max(1, static_cast<int>(std::ceil(params.T / step - 1e-9)));
  const double h = params.T / n;
  const double c = params.insurer_premium_rate();
  double sI = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double s = h * i;
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    const Contract k = path.at(s);
    const PremiumRates p = premium_rates(k.point, k.response, params);
    sI += w * params.acc_I(s) * (c - p.p1 - p.p2);
    s1 += w * params.acc_R1(s) * p.p1;
    s2 += w * params.acc_R2(s) * p.p2;
  }
  return {params.acc_I(0.0) * params.x0_I + h * sI, params.acc_R1(0.0) * params.x0_R1 + h * s1,
          params.acc_R2(0.0) * params.x0_R2 + h * s2};
}

struct PathResult {
  TerminalSample x;
  double claims = 0.0;
  double jumps = 0.0;
  double split_error = 0.0;
};

}  // namespace

SplitMix64::SplitMix64(std::uint64_t seed, std::uint64_t stream)
    : state_(mix64(seed ^ mix64(stream + 0x9e3779b97f4a7c15ULL))) {}

SplitMix64::result_type SplitMix64::operator()() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix64(state_);
}

double SplitMix64::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

void SimConfig::validate() const {
  if (paths < 1) throw DomainError("simulation needs at least one path");
  if (step < 0.0 || !std::isfinite(step)) throw DomainError("simulation step must be positive");
}

TerminalSamples simulate(const StrategyPath& path, const MarketParams& params, const SimConfig& config) {
  config.validate();
  params.validate();
  const double step = config.step > 0.0 ? config.step : params.T / 8000.0;
  const DeterministicPart base = deterministic_part(path, params, step);

  std::vector<PathResult> results(config.paths);
  parallel_for(
      config.paths,
      [&](std::size_t i) {
        PathResult r;
        r.x = {base.I, base.R1, base.R2};
        if (params.lambda > 0.0) {
          SplitMix64 rng(config.seed, i);
          double t = 0.0;
          while (true) {
            t += -std::log1p(-rng.uniform()) / params.lambda;
            if (t >= params.T) break;
            const double y = params.claims.quantile(rng.uniform());
            const Indemnity split = indemnity(y, path.at(t).response);
            r.x.x_I -= params.acc_I(t) * split.retained;
            r.x.x_R1 -= params.acc_R1(t) * split.l1;
            r.x.x_R2 -= params.acc_R2(t) * split.l2;
            const double total = split.retained + split.l1 + split.l2;
            r.claims += y;
            r.jumps += total;
            r.split_error = std::max(r.split_error, std::abs(total - y));
          }
        }
        results[i] = r;
      },
      config.workers);

  TerminalSamples out;
  out.paths.reserve(results.size());
  for (const auto& r : results) {
    out.paths.push_back(r.x);
    out.total_claims += r.claims;
    out.total_jumps += r.jumps;
    out.max_split_error = std::max(out.max_split_error, r.split_error);
  }
  return out;
}

std::array<ObjectiveEstimate, 3> estimate_objectives(const TerminalSamples& samples, const MarketParams& params) {
  const std::size_t n = samples.size();
  if (n < 2) throw DomainError("objective estimates need at least two paths");
  std::array<ObjectiveEstimate, 3> out;
  const std::array<Party, 3> parties{Party::I, Party::R1, Party::R2};
  const double nd = static_cast<double>(n);
  for (std::size_t k = 0; k < 3; ++k) {
    auto value = [&](std::size_t i) {
      const auto& s = samples.paths[i];
      return k == 0 ? s.x_I : (k == 1 ? s.x_R1 : s.x_R2);
    };
    // Deviations are taken from the first sample, so constant data gives exact zeros.
    const double shift = value(0);
    double offset = 0.0;
    for (std::size_t i = 0; i < n; ++i) offset += value(i) - shift;
    offset /= nd;
    const double mean = shift + offset;
    auto deviation = [&](std::size_t i) { return (value(i) - shift) - offset; };
    double m2 = 0.0;
    double m4 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dev = deviation(i);
      m2 += dev * dev;
      m4 += dev * dev * dev * dev;
    }
    const double var = m2 / (nd - 1.0);
    m4 /= nd;
    const double gamma = party_risk_aversion(params, parties[k]);
    // Influence function of J = mean - gamma/2 var.
    double psi_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dev = deviation(i);
      const double psi = dev - 0.5 * gamma * (dev * dev - var);
      psi_sq += psi * psi;
    }
    ObjectiveEstimate e;
    e.value.party = parties[k];
    e.value.mean = mean;
    e.value.variance = var;
    e.value.J = mean - 0.5 * gamma * var;
    e.se_mean = std::sqrt(var / nd);
    const double var_of_var = (m4 - (nd - 3.0) / (nd - 1.0) * var * var) / nd;
    e.se_variance = std::sqrt(std::max(0.0, var_of_var));
    e.se_J = std::sqrt(psi_sq / (nd - 1.0) / nd);
    out[k] = e;
  }
  return out;
}

}  // namespace reins

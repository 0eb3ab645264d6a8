#include "reins/reaction_general.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "reins/errors.hpp"
#include "reins/numerics.hpp"

namespace reins {

namespace {

constexpr double kQuadTol = 1e-10;
constexpr double kRootWidth = 1e-12;

double nonneg(double x) { return x < 0.0 ? 0.0 : x; }

TruncatedMoments full_truncation(const ClaimDistribution& dist, double d) {
  TruncatedMoments tm;
  tm.d = d;
  tm.m2_below = dist.second_moment();
  tm.m1_below = dist.mean();
  tm.excess_mean = 0.0;
  tm.excess_sq = 0.0;
  tm.survival = 0.0;
  return tm;
}

}  // namespace

TruncatedMoments truncated_moments(const ClaimDistribution& dist, double d) {
  if (!(d >= 0.0)) {
    throw DomainError("deductible must be nonnegative");
  }
  if (std::isinf(d) || d >= dist.upper_support()) {
    return full_truncation(dist, d);
  }
  TruncatedMoments tm;
  tm.d = d;
  if (dist.is_exponential()) {
    const double b = dist.beta();
    const double x = b * d;
    const double tail = std::exp(-x);
    const double below = -std::expm1(-x);  // F(d) without cancellation
    tm.survival = tail;
    tm.excess_mean = tail / b;
    tm.excess_sq = 2.0 * tail / (b * b);
    tm.m1_below = nonneg(below - x * tail) / b;
    tm.m2_below = nonneg(2.0 / (b * b) * (below - tail * (x + 0.5 * x * x)));
    return tm;
  }
  // Integration by parts keeps everything in terms of the survival function.
  const double y_max = dist.upper_support();
  const double S_d = dist.survival(d);
  auto S = [&](double y) { return dist.survival(y); };
  tm.survival = S_d;
  tm.m1_below = nonneg(numerics::adaptive_simpson(S, 0.0, d, kQuadTol) - d * S_d);
  tm.m2_below = nonneg(
      numerics::adaptive_simpson([&](double y) { return 2.0 * y * S(y); }, 0.0, d, kQuadTol) - d * d * S_d);
  tm.excess_mean = nonneg(numerics::adaptive_simpson(S, d, y_max, kQuadTol));
  tm.excess_sq =
      nonneg(numerics::adaptive_simpson([&](double y) { return 2.0 * (y - d) * S(y); }, d, y_max, kQuadTol));
  return tm;
}

FocRatios foc_ratios(const PremiumPoint& point, const MarketParams& params) {
  if (!(point.xi1 > 0.0)) {
    throw DegeneratePremiumError("xi1 must be positive");
  }
  const double risk_I = params.gamma_I * params.acc_I(point.t);
  const double risk_R1 = params.gamma_R1 * params.acc_R1(point.t);
  const double risk_R2 = params.gamma_R2 * params.acc_R2(point.t);
  return {risk_R1 / risk_I, risk_R2 / risk_I, risk_R1 / point.xi1};
}

double foc_residual_r1(const PremiumPoint& point, const MarketParams& params) {
  const ResponseStrategy r = response(point, params);
  const FocRatios k = foc_ratios(point, params);
  const TruncatedMoments tm = truncated_moments(params.claims, r.d);
  const double tail_term = tm.survival > 0.0 ? r.d * r.d * (k.B_R1_ratio - 1.0) * tm.survival : 0.0;
  return (2.0 * r.q * (k.C_R1 + 1.0) - 1.0) * tm.m2_below + tail_term;
}

double foc_residual_r2(const PremiumPoint& point, const MarketParams& params) {
  const ResponseStrategy r = response(point, params);
  const FocRatios k = foc_ratios(point, params);
  const double risk_R2 = params.gamma_R2 * params.acc_R2(point.t);
  const TruncatedMoments tm = truncated_moments(params.claims, r.d);
  const double tail_term = tm.survival > 0.0 ? r.d * tm.survival : 0.0;
  return (1.0 + k.C_R2 + risk_R2 / (2.0 * point.xi1)) * tm.excess_mean - tail_term;
}

double instantaneous_reward(const PremiumPoint& point, const MarketParams& params, Party which) {
  if (params.lambda == 0.0) return 0.0;
  const ResponseStrategy r = response(point, params);
  const LayerMoments m = layer_moments(r, params.claims);
  switch (which) {
    case Party::R1: {
      const double risk = params.gamma_R1 * params.acc_R1(point.t);
      return params.lambda * (point.xi1 - 0.5 * risk) * m.l1_sq;
    }
    case Party::R2: {
      const double risk = params.gamma_R2 * params.acc_R2(point.t);
      return params.lambda * (point.xi2 * m.l2 - 0.5 * risk * m.l2_sq);
    }
    case Party::I: {
      const double risk = params.gamma_I * params.acc_I(point.t);
      return params.lambda * (params.theta * params.claims.mean() - point.xi1 * m.l1_sq - point.xi2 * m.l2 -
                              0.5 * risk * m.retained_sq);
    }
  }
  return 0.0;
}

Interval xi1_reaction_bracket(const MarketParams& params, double t) {
  const double risk_R1 = params.gamma_R1 * params.acc_R1(t);
  const double C = risk_R1 / (params.gamma_I * params.acc_I(t));
  const double lo = 2.0 * risk_R1 / (std::sqrt((2.0 * C - 1.0) * (2.0 * C - 1.0) + 8.0 * C) - (2.0 * C - 1.0));
  const double hi = risk_R1 * (2.0 * C + 1.0) / (2.0 * C);
  return {lo, hi};
}

double reaction_xi1(double xi2, const MarketParams& params, double t, BoxClamp clamp) {
  if (!(xi2 > 0.0)) {
    throw DomainError("reaction_xi1 needs xi2 > 0");
  }
  const Interval b = xi1_reaction_bracket(params, t);
  const double lo = 0.9 * b.lo;
  const double hi = 1.1 * b.hi;
  const double root = numerics::bisect(
      [&](double xi1) { return foc_residual_r1({xi1, xi2, t}, params); }, lo, hi, kRootWidth);
  return clamp == BoxClamp::On ? admissible_box(params).xi1.clamp(root) : root;
}

double reaction_xi2(double xi1, const MarketParams& params, double t, BoxClamp clamp) {
  if (!(xi1 > 0.0)) {
    throw DegeneratePremiumError("reaction_xi2 needs xi1 > 0");
  }
  const double risk_I = params.gamma_I * params.acc_I(t);
  const double C_R2 = params.gamma_R2 * params.acc_R2(t) / risk_I;
  const double beta_eff = 2.0 * params.claims.mean() / params.claims.second_moment();
  const double lo = 1e-8;
  const double hi = 10.0 * risk_I * (1.0 + C_R2) / beta_eff;
  const double root = numerics::bisect(
      [&](double xi2) { return foc_residual_r2({xi1, xi2, t}, params); }, lo, hi, kRootWidth);
  return clamp == BoxClamp::On ? admissible_box(params).xi2.clamp(root) : root;
}

PremiumPoint general_equilibrium(const MarketParams& params, double t, const GeneralEquilibriumOptions& opts) {
  const Interval b = xi1_reaction_bracket(params, t);
  double xi1 = 0.5 * (b.lo + b.hi);
  double xi2 = reaction_xi2(xi1, params, t);
  for (int it = 0; it < opts.max_iter; ++it) {
    const double target = reaction_xi1(xi2, params, t);
    const double next = (1.0 - opts.damping) * xi1 + opts.damping * target;
    const double step = std::abs(next - xi1);
    xi1 = next;
    xi2 = reaction_xi2(xi1, params, t);
    if (step < 1e-11) {
      const PremiumPoint p{xi1, xi2, t};
      if (std::abs(foc_residual_r1(p, params)) < opts.residual_tol &&
          std::abs(foc_residual_r2(p, params)) < opts.residual_tol) {
        return p;
      }
    }
  }
  throw ConvergenceError("best-response iteration did not converge in " + std::to_string(opts.max_iter) +
                         " iterations");
}

}  // namespace reins

#include "reins/valuation.hpp"

#include <algorithm>
#include <cmath>

#include "reins/errors.hpp"
#include "reins/numerics.hpp"
#include "reins/parallel.hpp"

namespace reins {

StrategyPath equilibrium_path(const MarketParams& params, int grid_points) {
  if (grid_points < 2) {
    throw DomainError("equilibrium path needs at least two grid points");
  }
  const double T = params.T;
  auto xi1 = std::make_shared<std::vector<double>>(grid_points);
  auto xi2 = std::make_shared<std::vector<double>>(grid_points);
  parallel_for(static_cast<std::size_t>(grid_points), [&](std::size_t i) {
    const double t = T * static_cast<double>(i) / (grid_points - 1);
    const EquilibriumResult r = solve_equilibrium(params, t);
    (*xi1)[i] = r.xi1_star;
    (*xi2)[i] = r.xi2_star;
  });
  return StrategyPath([params, xi1, xi2, grid_points](double t) {
    const double pos = std::clamp(t / params.T, 0.0, 1.0) * (grid_points - 1);
    const auto i = std::min(static_cast<int>(pos), grid_points - 2);
    const double w = pos - i;
    const PremiumPoint p{(1.0 - w) * (*xi1)[i] + w * (*xi1)[i + 1], (1.0 - w) * (*xi2)[i] + w * (*xi2)[i + 1], t};
    return Contract{p, response(p, params)};
  });
}

StrategyPath constant_loading_path(const MarketParams& params, double xi1, double xi2) {
  return StrategyPath([params, xi1, xi2](double t) {
    const PremiumPoint p{xi1, xi2, t};
    return Contract{p, response(p, params)};
  });
}

StrategyPath no_reinsurance_path() {
  return StrategyPath([](double t) { return Contract{PremiumPoint{0.0, 0.0, t}, ResponseStrategy::none(t)}; });
}

double party_accumulation(const MarketParams& params, Party party, double t) {
  switch (party) {
    case Party::I:
      return params.acc_I(t);
    case Party::R1:
      return params.acc_R1(t);
    case Party::R2:
      return params.acc_R2(t);
  }
  return 1.0;
}

double party_risk_aversion(const MarketParams& params, Party party) {
  switch (party) {
    case Party::I:
      return params.gamma_I;
    case Party::R1:
      return params.gamma_R1;
    case Party::R2:
      return params.gamma_R2;
  }
  return 0.0;
}

double party_initial_surplus(const MarketParams& params, Party party) {
  switch (party) {
    case Party::I:
      return params.x0_I;
    case Party::R1:
      return params.x0_R1;
    case Party::R2:
      return params.x0_R2;
  }
  return 0.0;
}

double drift_rate(const Contract& c, const MarketParams& params, Party party) {
  if (params.lambda == 0.0) return 0.0;
  const LayerMoments m = layer_moments(c.response, params.claims);
  const double p1 = params.lambda * (m.l1 + c.point.xi1 * m.l1_sq);
  const double p2 = (1.0 + c.point.xi2) * params.lambda * m.l2;
  switch (party) {
    case Party::I:
      return params.insurer_premium_rate() - p1 - p2 - params.lambda * m.retained;
    case Party::R1:
      return p1 - params.lambda * m.l1;
    case Party::R2:
      return p2 - params.lambda * m.l2;
  }
  return 0.0;
}

double jump_variance_rate(const Contract& c, const MarketParams& params, Party party) {
  if (params.lambda == 0.0) return 0.0;
  const LayerMoments m = layer_moments(c.response, params.claims);
  switch (party) {
    case Party::I:
      return params.lambda * m.retained_sq;
    case Party::R1:
      return params.lambda * m.l1_sq;
    case Party::R2:
      return params.lambda * m.l2_sq;
  }
  return 0.0;
}

ObjectiveValue closed_form_objective(Party party, const StrategyPath& path, const MarketParams& params, double t,
                                     double x, int panels) {
  if (!(t >= 0.0) || t > params.T) {
    throw DomainError("objective time outside [0, T]");
  }
  ObjectiveValue v;
  v.party = party;
  const double acc = party_accumulation(params, party, t);
  double drift_part = 0.0;
  double var_part = 0.0;
  if (t < params.T) {
    drift_part = numerics::composite_simpson(
        [&](double s) { return party_accumulation(params, party, s) * drift_rate(path.at(s), params, party); }, t,
        params.T, panels);
    var_part = numerics::composite_simpson(
        [&](double s) {
          const double a = party_accumulation(params, party, s);
          return a * a * jump_variance_rate(path.at(s), params, party);
        },
        t, params.T, panels);
  }
  v.mean = acc * x + drift_part;
  v.variance = var_part;
  v.J = v.mean - 0.5 * party_risk_aversion(params, party) * v.variance;
  return v;
}

ValueIntercept::ValueIntercept(Party party, MarketParams params, StrategyPath path, int panels)
    : party_(party), params_(std::move(params)), path_(std::move(path)), panels_(panels) {}

double ValueIntercept::B(double t) const {
  if (!(t >= 0.0) || t > params_.T) {
    throw DomainError("intercept time outside [0, T]");
  }
  if (t == params_.T || params_.lambda == 0.0) return 0.0;
  const MarketParams& p = params_;
  const double lambda = p.lambda;
  auto reward = [&](double s) {
    const Contract c = path_.at(s);
    const LayerMoments m = layer_moments(c.response, p.claims);
    const double acc = party_accumulation(p, party_, s);
    double r = 0.0;
    switch (party_) {
      case Party::I:
        r = lambda * (p.theta * p.claims.mean() - c.point.xi1 * m.l1_sq - c.point.xi2 * m.l2 -
                      0.5 * p.gamma_I * acc * m.retained_sq);
        break;
      case Party::R1:
        r = lambda * (c.point.xi1 - 0.5 * p.gamma_R1 * acc) * m.l1_sq;
        break;
      case Party::R2:
        r = lambda * (c.point.xi2 * m.l2 - 0.5 * p.gamma_R2 * acc * m.l2_sq);
        break;
    }
    return acc * r;
  };
  return numerics::composite_simpson(reward, t, p.T, panels_);
}

double ValueIntercept::value(double t, double x) const {
  return party_accumulation(params_, party_, t) * x + B(t);
}

ValueIntercept value_intercept(Party party, const MarketParams& params, const StrategyPath& path) {
  return ValueIntercept(party, params, path);
}

}  // namespace reins

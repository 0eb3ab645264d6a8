#pragma once

#include <functional>
#include <vector>

#include "reins/expo_equilibrium.hpp"
#include "reins/insurer_response.hpp"
#include "reins/market_model.hpp"

namespace reins {

/// Loadings together with the insurer's cession in force at one instant.
struct Contract {
  PremiumPoint point;
  ResponseStrategy response;
};

/// Deterministic market strategy over [0, T]. Strategies depend on time only,
/// never on the surplus.
class StrategyPath {
 public:
  explicit StrategyPath(std::function<Contract(double)> at) : at_(std::move(at)) {}
  Contract at(double t) const { return at_(t); }

 private:
  std::function<Contract(double)> at_;
};

/// Equilibrium loadings tabulated on `grid_points` uniform nodes of [0, T] and
/// interpolated linearly; the cession is recomputed from the interpolated loadings.
StrategyPath equilibrium_path(const MarketParams& params, int grid_points = 801);
/// Fixed loadings with the insurer best-responding at each instant.
StrategyPath constant_loading_path(const MarketParams& params, double xi1, double xi2);
/// The insurer keeps every claim.
StrategyPath no_reinsurance_path();

struct ObjectiveValue {
  Party party = Party::I;
  double mean = 0.0;
  double variance = 0.0;
  double J = 0.0;
};

/// Premium flow minus expected ceded/retained loss, per unit time, for `party`.
double drift_rate(const Contract& c, const MarketParams& params, Party party);
/// lambda E[(jump size)^2] for `party`.
double jump_variance_rate(const Contract& c, const MarketParams& params, Party party);

/// Mean, variance and mean-variance objective of the party's terminal surplus
/// given surplus x at time t, by composite Simpson over [t, T].
ObjectiveValue closed_form_objective(Party party, const StrategyPath& path, const MarketParams& params, double t,
                                     double x, int panels = 2000);

/// B_k(t) in V_k(t, x) = A_k(t) x + B_k(t), integrating the optimized HJB reward.
class ValueIntercept {
 public:
  ValueIntercept(Party party, MarketParams params, StrategyPath path, int panels = 2000);

  Party party() const { return party_; }
  double B(double t) const;
  double value(double t, double x) const;

 private:
  Party party_;
  MarketParams params_;
  StrategyPath path_;
  int panels_;
};

ValueIntercept value_intercept(Party party, const MarketParams& params, const StrategyPath& path);

double party_accumulation(const MarketParams& params, Party party, double t);
double party_risk_aversion(const MarketParams& params, Party party);
double party_initial_surplus(const MarketParams& params, Party party);

}  // namespace reins

#pragma once

#include <string>

#include "reins/insurer_response.hpp"
#include "reins/market_model.hpp"

namespace reins {

// Closed-form machinery for exponential claims.

/// e(x) = (2/x^2) e^x - (1 + 2/x + 2/x^2); positive-term series below x = 2.
double e_fun(double x);
/// Positive root of the reinsurer-1 quadratic in B_R1 for a given e-value x >= 0.
double g_fun(double x, double C_R1);
/// G(x) = g(e(x)); strictly decreasing from g(0) = 1 to 2C/(2C+1).
double G_fun(double x, double C_R1);
/// Inverse of G on the open interval (2C/(2C+1), g(0)). Throws RangeError outside it.
double G_inv(double y, double C_R1);

/// Reinsurer 1's reaction expressed as xi2 = h1(xi1). Defined on
/// xi1_reaction_bracket(params, t); throws RangeError outside.
double h1(double xi1, const MarketParams& params, double t);
/// Reinsurer 2's reaction xi2 = h2(xi1).
double h2(double xi1, const MarketParams& params, double t);
/// Solves h1(xi1) = xi2 on h1's domain. Throws RangeError outside h1's range.
double h1_inv(double xi2, const MarketParams& params, double t);

struct LoadingPair {
  double xi1 = 0.0;
  double xi2 = 0.0;
};

/// Unique intersection of h1 and h2, ignoring the admissible box.
LoadingPair unconstrained_fixed_point(const MarketParams& params, double t);

enum class Regime { Interior, UpperRight, Xi2CapOnly, Xi1FloorOnly, LowerLeft, OtherBoundary, Candidate };

std::string regime_name(Regime r);

struct EquilibriumResult {
  double xi1_star = 0.0;
  double xi2_star = 0.0;
  ResponseStrategy response;
  Regime regime = Regime::Interior;
  LoadingPair unconstrained;
  /// Each loading is the box-clamped best response to the other (within 1e-8).
  bool mutual_best_response = false;
  double t = 0.0;

  PremiumPoint point() const { return {xi1_star, xi2_star, t}; }
};

/// Equilibrium with the admissible box enforced, evaluated as the nested
/// max/min of the closed-form proposition. Requires exponential claims and the
/// Section4 bound convention (ConfigError otherwise).
EquilibriumResult constrained_equilibrium(const MarketParams& params, double t);

/// Boxed best-response gap max(|xi1 - clamp(h1_inv(xi2))|, |xi2 - clamp(h2(xi1))|).
double boxed_best_response_gap(const PremiumPoint& point, const MarketParams& params);

/// Closed form for exponential/Section4 inputs, damped best-response iteration otherwise.
EquilibriumResult solve_equilibrium(const MarketParams& params, double t);

}  // namespace reins

#pragma once

#include "reins/insurer_response.hpp"
#include "reins/market_model.hpp"

namespace reins {

/// Partial moments of the claim law split at a deductible d.
struct TruncatedMoments {
  double d = 0.0;
  double m2_below = 0.0;     ///< ∫_0^d y^2 dF
  double excess_mean = 0.0;  ///< ∫_d^∞ (y - d) dF
  double survival = 1.0;     ///< 1 - F(d)
  double m1_below = 0.0;     ///< ∫_0^d y dF
  double excess_sq = 0.0;    ///< ∫_d^∞ (y - d)^2 dF
};

TruncatedMoments truncated_moments(const ClaimDistribution& dist, double d);

/// C_j = gamma_j A_j / (gamma_I A_I) and B_R1 = gamma_R1 A_R1 / xi1.
struct FocRatios {
  double C_R1 = 0.0;
  double C_R2 = 0.0;
  double B_R1_ratio = 0.0;
};

FocRatios foc_ratios(const PremiumPoint& point, const MarketParams& params);

/// Reinsurer 1's first-order condition in xi1 (zero at its best response).
double foc_residual_r1(const PremiumPoint& point, const MarketParams& params);
/// Reinsurer 2's first-order condition in xi2.
double foc_residual_r2(const PremiumPoint& point, const MarketParams& params);

/// Instantaneous reward rate inside the party's HJB supremum, before the
/// outer accumulation factor. For the insurer this is the optimized integrand
/// lambda E[theta y - xi1 l1^2 - xi2 l2 - gamma_I A_I retained^2 / 2].
double instantaneous_reward(const PremiumPoint& point, const MarketParams& params, Party which);

enum class BoxClamp { Off, On };

/// Interval on which reinsurer 1's reaction root must lie; its ends are where
/// gamma_R1 A_R1 / xi1 hits the limits of G.
Interval xi1_reaction_bracket(const MarketParams& params, double t);

/// Reinsurer 1's best response to xi2 (root of foc_residual_r1 in xi1).
double reaction_xi1(double xi2, const MarketParams& params, double t, BoxClamp clamp = BoxClamp::Off);
/// Reinsurer 2's best response to xi1 (root of foc_residual_r2 in xi2).
double reaction_xi2(double xi1, const MarketParams& params, double t, BoxClamp clamp = BoxClamp::Off);

struct GeneralEquilibriumOptions {
  int max_iter = 200;
  double damping = 0.5;
  double residual_tol = 1e-8;
};

/// Damped best-response iteration for an arbitrary claim law. Uniqueness is not
/// known outside the exponential case, so the result is only a candidate.
/// Throws ConvergenceError after `max_iter` iterations.
PremiumPoint general_equilibrium(const MarketParams& params, double t,
                                 const GeneralEquilibriumOptions& opts = {});

}  // namespace reins

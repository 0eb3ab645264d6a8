#pragma once

#include "reins/market_model.hpp"

namespace reins {

/// Insurer's layered cession at one instant: a proportional share q with
/// reinsurer 1 up to `cap`, and an excess-of-loss layer above `d` with reinsurer 2.
struct ResponseStrategy {
  double t = 0.0;
  double q = 0.0;
  double d = 0.0;
  double cap = 0.0;
  double retention_limit = 0.0;

  /// No cession at all: everything is retained.
  static ResponseStrategy none(double t);
};

/// Equilibrium best response of the insurer to the loadings in `point`.
/// Throws DegeneratePremiumError when xi1 <= 0 and DomainError when xi2 < 0.
ResponseStrategy response(const PremiumPoint& point, const MarketParams& params);

struct Indemnity {
  double l1 = 0.0;
  double l2 = 0.0;
  double retained = 0.0;
};

/// Split of a claim of size y. y == d falls in the proportional branch.
Indemnity indemnity(double y, const ResponseStrategy& r);

/// Moments of the ceded and retained amounts per claim under the claim law.
struct LayerMoments {
  double l1 = 0.0;
  double l1_sq = 0.0;
  double l2 = 0.0;
  double l2_sq = 0.0;
  double retained = 0.0;
  double retained_sq = 0.0;
};

LayerMoments layer_moments(const ResponseStrategy& r, const ClaimDistribution& dist);

}  // namespace reins

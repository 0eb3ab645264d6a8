#include "reins/insurer_response.hpp"

#include <cmath>
#include <limits>

#include "reins/errors.hpp"
#include "reins/reaction_general.hpp"

namespace reins {

ResponseStrategy ResponseStrategy::none(double t) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  return {t, 0.0, kInf, 0.0, kInf};
}

ResponseStrategy response(const PremiumPoint& point, const MarketParams& params) {
  if (!(point.xi1 > 0.0)) {
    throw DegeneratePremiumError("xi1 must be positive to define the proportional layer");
  }
  if (!(point.xi2 >= 0.0)) {
    throw DomainError("xi2 must be nonnegative");
  }
  const double risk = params.gamma_I * params.acc_I(point.t);
  ResponseStrategy r;
  r.t = point.t;
  r.q = risk / (2.0 * point.xi1 + risk);
  r.cap = point.xi2 / (2.0 * point.xi1);
  r.retention_limit = point.xi2 / risk;
  r.d = r.retention_limit + r.cap;
  return r;
}

Indemnity indemnity(double y, const ResponseStrategy& r) {
  if (!(y >= 0.0)) {
    throw DomainError("claim size must be nonnegative");
  }
  if (y <= r.d) {
    const double l1 = r.q * y;
    return {l1, 0.0, y - l1};
  }
  const double l2 = y - r.d;
  return {r.cap, l2, y - r.cap - l2};
}

LayerMoments layer_moments(const ResponseStrategy& r, const ClaimDistribution& dist) {
  const TruncatedMoments tm = truncated_moments(dist, r.d);
  // Above d the proportional and retained layers are flat; skip them when the tail is empty
  // so an infinite deductible does not produce inf * 0.
  const double tail = tm.survival;
  const double cap_tail = tail > 0.0 ? r.cap * tail : 0.0;
  const double cap_sq_tail = tail > 0.0 ? r.cap * r.cap * tail : 0.0;
  const double ret_tail = tail > 0.0 ? r.retention_limit * tail : 0.0;
  const double ret_sq_tail = tail > 0.0 ? r.retention_limit * r.retention_limit * tail : 0.0;
  const double keep = 1.0 - r.q;
  LayerMoments m;
  m.l1 = r.q * tm.m1_below + cap_tail;
  m.l1_sq = r.q * r.q * tm.m2_below + cap_sq_tail;
  m.l2 = tm.excess_mean;
  m.l2_sq = tm.excess_sq;
  m.retained = keep * tm.m1_below + ret_tail;
  m.retained_sq = keep * keep * tm.m2_below + ret_sq_tail;
  return m;
}

}  // namespace reins

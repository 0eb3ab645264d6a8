#include "reins/market_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "reins/errors.hpp"
#include "reins/insurer_response.hpp"
#include "reins/numerics.hpp"

namespace reins {

// ---------------------------------------------------------------- RateCurve

RateCurve::RateCurve(std::vector<Segment> segments, double horizon)
    : segments_(std::move(segments)), horizon_(horizon) {
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) {
    throw DomainError("rate curve horizon must be positive and finite");
  }
  if (segments_.empty() || segments_.front().t_start != 0.0) {
    throw DomainError("rate curve must start at t = 0");
  }
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (!std::isfinite(s.rate) || s.rate < 0.0) {
      throw DomainError("rate curve rates must be finite and nonnegative");
    }
    if (s.t_start >= horizon_ && i > 0) {
      throw DomainError("rate curve segment starts beyond the horizon");
    }
    if (i > 0 && !(s.t_start > segments_[i - 1].t_start)) {
      throw DomainError("rate curve segment starts must be strictly increasing");
    }
  }
}

RateCurve RateCurve::constant(double rate, double horizon) { return RateCurve({{0.0, rate}}, horizon); }

double RateCurve::rate_at(double t) const {
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](double v, const Segment& s) { return v < s.t_start; });
  if (it == segments_.begin()) return segments_.front().rate;
  return std::prev(it)->rate;
}

double RateCurve::integral(double a, double b) const {
  double total = 0.0;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const double s0 = segments_[i].t_start;
    const double s1 = (i + 1 < segments_.size()) ? segments_[i + 1].t_start : horizon_;
    const double lo = std::max(a, s0);
    const double hi = std::min(b, s1);
    if (hi > lo) total += segments_[i].rate * (hi - lo);
  }
  return total;
}

double accumulation(const RateCurve& curve, double t, double T) {
  constexpr double kSlack = 1e-12;
  if (t > T || t < -kSlack || T > curve.horizon() * (1.0 + kSlack) + kSlack) {
    std::ostringstream os;
    os << "accumulation window [" << t << ", " << T << "] outside [0, " << curve.horizon() << "]";
    throw DomainError(os.str());
  }
  return std::exp(curve.integral(t, T));
}

// -------------------------------------------------------- ClaimDistribution

struct ClaimDistribution::GenericData {
  std::string name;
  std::function<double(double)> cdf;
  double y_max = 0.0;
  std::vector<double> grid_y;
  std::vector<double> grid_F;
};

namespace {

constexpr double kTailMass = 1e-12;
constexpr double kMomentTol = 1e-10;
constexpr double kMaxSupport = 1e6;
constexpr int kQuantileNodes = 8192;

}  // namespace

ClaimDistribution ClaimDistribution::exponential(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("exponential claim rate beta must be positive");
  }
  ClaimDistribution d;
  d.kind_ = Kind::Exponential;
  d.beta_ = beta;
  d.mean_ = 1.0 / beta;
  d.second_ = 2.0 / (beta * beta);
  return d;
}

ClaimDistribution ClaimDistribution::generic(std::string name, std::function<double(double)> cdf) {
  auto data = std::make_shared<GenericData>();
  data->name = std::move(name);
  data->cdf = std::move(cdf);
  double y = 1.0;
  while (1.0 - data->cdf(y) >= kTailMass) {
    y *= 2.0;
    if (y > kMaxSupport) {
      throw IntegrationError("claim law '" + data->name + "' has too much tail mass to integrate");
    }
  }
  data->y_max = y;
  const auto& F = data->cdf;
  ClaimDistribution d;
  d.kind_ = Kind::Generic;
  d.mean_ = numerics::adaptive_simpson([&](double s) { return 1.0 - F(s); }, 0.0, y, kMomentTol);
  d.second_ = numerics::adaptive_simpson([&](double s) { return 2.0 * s * (1.0 - F(s)); }, 0.0, y, kMomentTol);
  if (!(d.mean_ > 0.0)) {
    throw DomainError("claim law '" + data->name + "' must put mass on (0, inf)");
  }
  d.beta_ = 2.0 * d.mean_ / d.second_;
  data->grid_y.resize(kQuantileNodes + 1);
  data->grid_F.resize(kQuantileNodes + 1);
  for (int i = 0; i <= kQuantileNodes; ++i) {
    const double yi = y * i / kQuantileNodes;
    data->grid_y[i] = yi;
    // Running max keeps the table monotone even if the CDF wobbles numerically.
    data->grid_F[i] = std::clamp(F(yi), 0.0, 1.0);
    if (i > 0) data->grid_F[i] = std::max(data->grid_F[i], data->grid_F[i - 1]);
  }
  d.generic_ = std::move(data);
  return d;
}

ClaimDistribution ClaimDistribution::uniform(double lo, double hi) {
  if (!(lo >= 0.0) || !(hi > lo)) {
    throw DomainError("uniform claim law needs 0 <= lo < hi");
  }
  std::ostringstream os;
  os << "uniform(" << lo << "," << hi << ")";
  return generic(os.str(), [lo, hi](double y) { return std::clamp((y - lo) / (hi - lo), 0.0, 1.0); });
}

std::string ClaimDistribution::name() const {
  if (generic_) return generic_->name;
  std::ostringstream os;
  os << "exponential(" << beta_ << ")";
  return os.str();
}

double ClaimDistribution::cdf(double y) const {
  if (y <= 0.0) return 0.0;
  if (generic_) return generic_->cdf(y);
  return -std::expm1(-beta_ * y);
}

double ClaimDistribution::upper_support() const {
  return generic_ ? generic_->y_max : std::numeric_limits<double>::infinity();
}

double ClaimDistribution::quantile(double u) const {
  if (!generic_) return -std::log1p(-u) / beta_;
  const auto& F = generic_->grid_F;
  const auto& Y = generic_->grid_y;
  auto it = std::lower_bound(F.begin(), F.end(), u);
  if (it == F.begin()) return Y.front();
  if (it == F.end()) return Y.back();
  const auto i = static_cast<std::size_t>(it - F.begin());
  const double f0 = F[i - 1];
  const double f1 = F[i];
  if (f1 <= f0) return Y[i];
  return Y[i - 1] + (u - f0) / (f1 - f0) * (Y[i] - Y[i - 1]);
}

std::pair<double, double> claim_moments(const ClaimDistribution& dist) {
  return {dist.mean(), dist.second_moment()};
}

// ------------------------------------------------------------- MarketParams

const char* party_name(Party p) {
  switch (p) {
    case Party::I:
      return "I";
    case Party::R1:
      return "R1";
    case Party::R2:
      return "R2";
  }
  return "?";
}

void MarketParams::validate() const {
  auto fail = [](const std::string& msg) { throw DomainError("invalid market parameters: " + msg); };
  if (!(T > 0.0) || !std::isfinite(T)) fail("T must be positive");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) fail("lambda must be nonnegative");
  if (!(theta > 0.0)) fail("theta must be positive");
  if (!(eta > theta)) fail("eta must exceed theta");
  if (!(gamma_I > 0.0)) fail("gamma_I must be positive");
  if (!(gamma_R1 > 0.0)) fail("gamma_R1 must be positive");
  if (!(gamma_R2 > 0.0)) fail("gamma_R2 must be positive");
  for (const RateCurve* c : {&rho_I, &rho_R1, &rho_R2}) {
    if (c->segments().empty()) fail("rate curve missing");
    if (std::abs(c->horizon() - T) > 1e-12 * std::max(1.0, T)) fail("rate curve horizon differs from T");
  }
}

double MarketParams::insurer_premium_rate() const { return (1.0 + theta) * lambda * claims.mean(); }

MarketParams base_params() { return MarketParams{}; }

AdmissibleBox admissible_box(const MarketParams& params) {
  double scale = 0.0;
  if (params.bound_convention == BoundConvention::Section4) {
    // Exponential rate for exponential claims; the matching moment ratio otherwise.
    scale = params.claims.is_exponential() ? params.claims.beta()
                                           : 2.0 * params.claims.mean() / params.claims.second_moment();
  } else {
    scale = params.claims.mean() / params.claims.second_moment();
  }
  return {{params.theta * scale, params.eta * scale}, {params.theta, params.eta}};
}

PremiumRates premium_rates(const PremiumPoint& point, const ResponseStrategy& response,
                           const MarketParams& params) {
  const LayerMoments m = layer_moments(response, params.claims);
  return {params.lambda * (m.l1 + point.xi1 * m.l1_sq), (1.0 + point.xi2) * params.lambda * m.l2};
}

}  // namespace reins

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace reins {

/// Piecewise-constant deterministic interest-rate curve on [0, horizon].
class RateCurve {
 public:
  struct Segment {
    double t_start;
    double rate;
  };

  RateCurve() = default;
  /// Segments must start at 0 with strictly increasing starts inside the horizon.
  RateCurve(std::vector<Segment> segments, double horizon);
  static RateCurve constant(double rate, double horizon);

  double horizon() const { return horizon_; }
  const std::vector<Segment>& segments() const { return segments_; }
  double rate_at(double t) const;
  /// Exact integral of the rate over [a, b].
  double integral(double a, double b) const;

 private:
  std::vector<Segment> segments_;
  double horizon_ = 0.0;
};

/// exp(∫_t^T rho(s) ds).
double accumulation(const RateCurve& curve, double t, double T);

/// Claim-severity law. Exponential is handled in closed form; generic laws are
/// described by their CDF and integrated numerically.
class ClaimDistribution {
 public:
  enum class Kind { Exponential, Generic };

  static ClaimDistribution exponential(double beta);
  /// `cdf` must be a CDF supported on [0, inf) with finite second moment.
  static ClaimDistribution generic(std::string name, std::function<double(double)> cdf);
  static ClaimDistribution uniform(double lo, double hi);

  Kind kind() const { return kind_; }
  bool is_exponential() const { return kind_ == Kind::Exponential; }
  /// Rate parameter; only meaningful for exponential claims.
  double beta() const { return beta_; }
  std::string name() const;

  double cdf(double y) const;
  double survival(double y) const { return 1.0 - cdf(y); }
  /// E[Y].
  double mean() const { return mean_; }
  /// E[Y^2] (second raw moment).
  double second_moment() const { return second_; }
  /// Point beyond which the tail mass is below 1e-12 (infinity for exponential).
  double upper_support() const;
  /// Inverse CDF used for sampling; u in [0, 1).
  double quantile(double u) const;

 private:
  struct GenericData;
  Kind kind_ = Kind::Exponential;
  double beta_ = 1.0;
  double mean_ = 1.0;
  double second_ = 2.0;
  std::shared_ptr<const GenericData> generic_;
};

/// (a_Y, sigma_Y^2) with sigma_Y^2 the second raw moment.
std::pair<double, double> claim_moments(const ClaimDistribution& dist);

enum class BoundConvention { Section4, Definition21 };

enum class Party { I, R1, R2 };

const char* party_name(Party p);

struct MarketParams {
  double T = 8.0;
  double lambda = 1.0;
  double theta = 0.1;
  double eta = 0.9;
  double gamma_I = 0.1;
  double gamma_R1 = 0.1;
  double gamma_R2 = 0.1;
  RateCurve rho_I = RateCurve::constant(0.1, 8.0);
  RateCurve rho_R1 = RateCurve::constant(0.1, 8.0);
  RateCurve rho_R2 = RateCurve::constant(0.1, 8.0);
  ClaimDistribution claims = ClaimDistribution::exponential(1.0);
  double x0_I = 1.0;
  double x0_R1 = 10.0;
  double x0_R2 = 10.0;
  BoundConvention bound_convention = BoundConvention::Section4;

  /// Throws DomainError naming the first violated constraint.
  void validate() const;

  /// Insurer's own premium rate c = (1 + theta) lambda a_Y.
  double insurer_premium_rate() const;
  double acc_I(double t) const { return accumulation(rho_I, t, T); }
  double acc_R1(double t) const { return accumulation(rho_R1, t, T); }
  double acc_R2(double t) const { return accumulation(rho_R2, t, T); }
};

/// The parameter set of the reference numerical study.
MarketParams base_params();

struct PremiumPoint {
  double xi1 = 0.0;
  double xi2 = 0.0;
  double t = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return x >= lo && x <= hi; }
  double clamp(double x) const { return x < lo ? lo : (x > hi ? hi : x); }
};

struct AdmissibleBox {
  Interval xi1;
  Interval xi2;
};

AdmissibleBox admissible_box(const MarketParams& params);

struct ResponseStrategy;

struct PremiumRates {
  double p1 = 0.0;
  double p2 = 0.0;
};

/// Reinsurers' premium flows for the given loadings and ceded layers.
PremiumRates premium_rates(const PremiumPoint& point, const ResponseStrategy& response,
                           const MarketParams& params);

}  // namespace reins

#include "reins/expo_equilibrium.hpp"

#include <cmath>
#include <limits>

#include "reins/errors.hpp"
#include "reins/numerics.hpp"
#include "reins/reaction_general.hpp"

namespace reins {

namespace {

constexpr double kSeriesSwitch = 2.0;
constexpr double kOverflowArg = 700.0;
constexpr double kEdgeShrink = 1e-12;
constexpr double kRootWidth = 1e-12;
constexpr double kBestResponseTol = 1e-8;

void require_closed_form(const MarketParams& params) {
  if (!params.claims.is_exponential()) {
    throw ConfigError("closed-form equilibrium needs exponential claims");
  }
  if (params.bound_convention != BoundConvention::Section4) {
    throw ConfigError("closed-form equilibrium is defined under the Section4 bound convention");
  }
}

struct Ctx {
  double risk_I;
  double risk_R1;
  double risk_R2;
  double C_R1;
  double C_R2;
  double beta;
};

Ctx context(const MarketParams& params, double t) {
  require_closed_form(params);
  Ctx c{};
  c.risk_I = params.gamma_I * params.acc_I(t);
  c.risk_R1 = params.gamma_R1 * params.acc_R1(t);
  c.risk_R2 = params.gamma_R2 * params.acc_R2(t);
  c.C_R1 = c.risk_R1 / c.risk_I;
  c.C_R2 = c.risk_R2 / c.risk_I;
  c.beta = params.claims.beta();
  return c;
}

double g_zero(double C) {
  return 0.5 * (-(2.0 * C - 1.0) + std::sqrt((2.0 * C - 1.0) * (2.0 * C - 1.0) + 8.0 * C));
}

double g_limit(double C) { return 2.0 * C / (2.0 * C + 1.0); }

// G extended continuously to x = 0.
double G_ext(double x, double C) { return x <= 0.0 ? g_zero(C) : G_fun(x, C); }

double h1_from_ctx(double xi1, const Ctx& c) {
  const double ratio = c.risk_R1 / xi1;
  return c.risk_I * G_inv(ratio, c.C_R1) / (c.beta * (c.risk_I / (2.0 * xi1) + 1.0));
}

double h2_from_ctx(double xi1, const Ctx& c) {
  return c.risk_I / c.beta * (1.0 + c.C_R2 - c.risk_I / (c.risk_I + 2.0 * xi1));
}

Interval shrunk_domain(const MarketParams& params, double t) {
  const Interval b = xi1_reaction_bracket(params, t);
  return {b.lo * (1.0 + kEdgeShrink), b.hi * (1.0 - kEdgeShrink)};
}

}  // namespace

double e_fun(double x) {
  if (!(x > 0.0)) {
    throw DomainError("e(x) needs x > 0");
  }
  if (x < kSeriesSwitch) {
    // sum_{n>=1} 2 x^n / (n+2)!
    double term = 2.0 * x / 6.0;
    double sum = 0.0;
    for (int n = 1; n <= 40 && term > 1e-17 * sum; ++n) {
      sum += term;
      term *= x / (n + 3);
    }
    return sum;
  }
  if (x > kOverflowArg) return std::numeric_limits<double>::infinity();
  const double inv = 1.0 / x;
  return 2.0 * inv * inv * std::exp(x) - (1.0 + 2.0 * inv + 2.0 * inv * inv);
}

double g_fun(double x, double C_R1) {
  if (!(x >= 0.0)) {
    throw DomainError("g(x) needs x >= 0");
  }
  if (!(C_R1 > 0.0)) {
    throw DomainError("g(x) needs C_R1 > 0");
  }
  if (std::isinf(x)) return g_limit(C_R1);
  const double b = 2.0 * C_R1 - 1.0 + x * (2.0 * C_R1 + 1.0);
  const double c = 2.0 * C_R1 * (x + 1.0);
  const double disc = std::sqrt(b * b + 4.0 * c);
  // Rationalized form avoids cancellation when b is large and positive.
  return b > 0.0 ? 2.0 * c / (b + disc) : 0.5 * (-b + disc);
}

double G_fun(double x, double C_R1) { return g_fun(e_fun(x), C_R1); }

double G_inv(double y, double C_R1) {
  const double top = g_zero(C_R1);
  const double bottom = g_limit(C_R1);
  if (!(y > bottom) || !(y < top)) {
    throw RangeError("G_inv argument " + std::to_string(y) + " outside (" + std::to_string(bottom) + ", " +
                     std::to_string(top) + ")");
  }
  auto f = [&](double x) { return G_ext(x, C_R1) - y; };
  double hi = 1.0;
  while (f(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 2.0 * kOverflowArg) {
      throw RangeError("G_inv argument too close to the lower limit of G");
    }
  }
  return numerics::bisect(f, 0.0, hi, kRootWidth);
}

double h1(double xi1, const MarketParams& params, double t) {
  const Ctx c = context(params, t);
  if (!(xi1 > 0.0)) {
    throw DomainError("h1 needs xi1 > 0");
  }
  return h1_from_ctx(xi1, c);
}

double h2(double xi1, const MarketParams& params, double t) {
  const Ctx c = context(params, t);
  if (!(xi1 > 0.0)) {
    throw DomainError("h2 needs xi1 > 0");
  }
  return h2_from_ctx(xi1, c);
}

double h1_inv(double xi2, const MarketParams& params, double t) {
  const Ctx c = context(params, t);
  const Interval dom = shrunk_domain(params, t);
  const double lo_val = h1_from_ctx(dom.lo, c);
  const double hi_val = h1_from_ctx(dom.hi, c);
  if (!(xi2 > lo_val) || !(xi2 < hi_val)) {
    throw RangeError("h1_inv argument " + std::to_string(xi2) + " outside h1 range (" + std::to_string(lo_val) +
                     ", " + std::to_string(hi_val) + ")");
  }
  return numerics::bisect([&](double x) { return h1_from_ctx(x, c) - xi2; }, dom.lo, dom.hi, kRootWidth);
}

LoadingPair unconstrained_fixed_point(const MarketParams& params, double t) {
  const Ctx c = context(params, t);
  const Interval dom = shrunk_domain(params, t);
  double xi1 = 0.0;
  try {
    xi1 = numerics::bisect([&](double x) { return h1_from_ctx(x, c) - h2_from_ctx(x, c); }, dom.lo, dom.hi,
                           kRootWidth);
  } catch (const NoRootError& e) {
    throw Error(std::string("internal: h1 - h2 has no sign change on its domain: ") + e.what());
  }
  return {xi1, h2_from_ctx(xi1, c)};
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::Interior:
      return "Interior";
    case Regime::UpperRight:
      return "UpperRight";
    case Regime::Xi2CapOnly:
      return "Xi2CapOnly";
    case Regime::Xi1FloorOnly:
      return "Xi1FloorOnly";
    case Regime::LowerLeft:
      return "LowerLeft";
    case Regime::OtherBoundary:
      return "OtherBoundary";
    case Regime::Candidate:
      return "Candidate";
  }
  return "?";
}

namespace {

// h1_inv with out-of-range arguments sent to the matching end of h1's domain.
double h1_inv_snapped(double xi2, const MarketParams& params, double t) {
  try {
    return h1_inv(xi2, params, t);
  } catch (const RangeError&) {
    const Ctx c = context(params, t);
    const Interval dom = shrunk_domain(params, t);
    // h1 increases across its domain, so a value below its range maps to the lower end.
    return xi2 <= h1_from_ctx(dom.lo, c) ? dom.lo : dom.hi;
  }
}

}  // namespace

double boxed_best_response_gap(const PremiumPoint& point, const MarketParams& params) {
  const AdmissibleBox box = admissible_box(params);
  const double br1 = box.xi1.clamp(h1_inv_snapped(point.xi2, params, point.t));
  const double br2 = box.xi2.clamp(h2(point.xi1, params, point.t));
  return std::max(std::abs(point.xi1 - br1), std::abs(point.xi2 - br2));
}

EquilibriumResult constrained_equilibrium(const MarketParams& params, double t) {
  require_closed_form(params);
  const AdmissibleBox box = admissible_box(params);
  const LoadingPair bar = unconstrained_fixed_point(params, t);

  enum class Branch { Low, Mid, High };
  Branch branch = Branch::Mid;
  double candidate = bar.xi2;
  if (bar.xi1 < box.xi1.lo) {
    branch = Branch::Low;
    candidate = h2(box.xi1.lo, params, t);
  } else if (bar.xi1 > box.xi1.hi) {
    branch = Branch::High;
    candidate = h2(box.xi1.hi, params, t);
  }
  const double xi2 = box.xi2.clamp(candidate);
  const bool capped = candidate > box.xi2.hi;
  const bool floored = candidate < box.xi2.lo;
  const double xi1 = box.xi1.clamp(h1_inv_snapped(xi2, params, t));

  EquilibriumResult res;
  res.t = t;
  res.xi1_star = xi1;
  res.xi2_star = xi2;
  res.unconstrained = bar;
  res.response = response({xi1, xi2, t}, params);
  switch (branch) {
    case Branch::Mid:
      res.regime = capped ? Regime::Xi2CapOnly : (floored ? Regime::OtherBoundary : Regime::Interior);
      break;
    case Branch::High:
      res.regime = capped ? Regime::UpperRight : Regime::OtherBoundary;
      break;
    case Branch::Low:
      res.regime = floored ? Regime::LowerLeft : (capped ? Regime::OtherBoundary : Regime::Xi1FloorOnly);
      break;
  }
  res.mutual_best_response = boxed_best_response_gap(res.point(), params) <= kBestResponseTol;
  return res;
}

EquilibriumResult solve_equilibrium(const MarketParams& params, double t) {
  if (params.claims.is_exponential() && params.bound_convention == BoundConvention::Section4) {
    return constrained_equilibrium(params, t);
  }
  const PremiumPoint p = general_equilibrium(params, t);
  EquilibriumResult res;
  res.t = t;
  res.xi1_star = p.xi1;
  res.xi2_star = p.xi2;
  res.unconstrained = {p.xi1, p.xi2};
  res.response = response(p, params);
  res.regime = Regime::Candidate;
  res.mutual_best_response = true;
  return res;
}

}  // namespace reins

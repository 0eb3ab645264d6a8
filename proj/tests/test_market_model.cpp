#include <doctest.h>

#include <cmath>
#include <functional>

#include "oracles.hpp"
#include "reins/errors.hpp"
#include "reins/insurer_response.hpp"
#include "reins/market_model.hpp"

using namespace reins;

TEST_CASE("accumulation factors") {
  CHECK(accumulation(RateCurve::constant(0.0, 8.0), 0.0, 8.0) == 1.0);
  CHECK(accumulation(RateCurve::constant(0.1, 8.0), 0.0, 8.0) == doctest::Approx(2.225541).epsilon(1e-6));
  const RateCurve piecewise({{0.0, 0.1}, {4.0, 0.2}}, 8.0);
  CHECK(accumulation(piecewise, 0.0, 8.0) == doctest::Approx(std::exp(1.2)).epsilon(1e-14));
  CHECK(accumulation(piecewise, 3.0, 5.0) == doctest::Approx(std::exp(0.1 + 0.2)).epsilon(1e-14));
  CHECK(accumulation(piecewise, 8.0, 8.0) == 1.0);
}

TEST_CASE("accumulation is multiplicative") {
  const RateCurve c({{0.0, 0.05}, {1.5, 0.2}, {4.0, 0.0}, {6.25, 0.13}}, 8.0);
  for (double t : {0.0, 0.7, 1.5, 3.3}) {
    for (double s : {t, 4.0, 6.3, 8.0}) {
      const double lhs = accumulation(c, t, 8.0);
      const double rhs = accumulation(c, t, s) * accumulation(c, s, 8.0);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * lhs);
    }
  }
}

TEST_CASE("rate curve integral agrees with quadrature") {
  const RateCurve c({{0.0, 0.05}, {1.5, 0.2}, {4.0, 0.0}}, 8.0);
  CHECK(c.integral(0.2, 7.1) == doctest::Approx(0.05 * 1.3 + 0.2 * 2.5).epsilon(1e-14));
  const double ref = oracle::gauss_legendre([&](double s) { return c.rate_at(s); }, 1.6, 3.9, 100);
  CHECK(std::abs(c.integral(1.6, 3.9) - ref) < 1e-12);
}

TEST_CASE("rate curve rejects bad input") {
  CHECK_THROWS_AS(RateCurve({{0.5, 0.1}}, 8.0), DomainError);
  CHECK_THROWS_AS(RateCurve({{0.0, 0.1}, {0.0, 0.2}}, 8.0), DomainError);
  CHECK_THROWS_AS(RateCurve({{0.0, -0.1}}, 8.0), DomainError);
  CHECK_THROWS_AS(accumulation(RateCurve::constant(0.1, 8.0), 9.0, 8.0), DomainError);
}

TEST_CASE("claim moments") {
  auto [a1, s1] = claim_moments(ClaimDistribution::exponential(1.0));
  CHECK(a1 == 1.0);
  CHECK(s1 == 2.0);
  auto [a2, s2] = claim_moments(ClaimDistribution::exponential(2.0));
  CHECK(a2 == 0.5);
  CHECK(s2 == 0.5);
  for (double beta : {0.3, 1.7, 4.5}) {
    auto [a, s] = claim_moments(ClaimDistribution::exponential(beta));
    CHECK(a == doctest::Approx(1.0 / beta).epsilon(1e-15));
    CHECK(s == doctest::Approx(2.0 / (beta * beta)).epsilon(1e-15));
  }
}

TEST_CASE("generic claim law moments match the analytic uniform moments") {
  const auto u = ClaimDistribution::generic("u02", [](double y) { return y <= 0 ? 0.0 : (y >= 2 ? 1.0 : y / 2); });
  auto [a, s] = claim_moments(u);
  CHECK(std::abs(a - 1.0) < 1e-8);
  CHECK(std::abs(s - 4.0 / 3.0) < 1e-8);
  const auto uu = ClaimDistribution::uniform(0.0, 2.0);
  CHECK(std::abs(uu.mean() - 1.0) < 1e-8);
  CHECK(uu.upper_support() >= 2.0);
  CHECK(std::abs(uu.quantile(0.25) - 0.5) < 1e-3);
}

TEST_CASE("generic law for an exponential CDF reproduces its moments") {
  const auto g = ClaimDistribution::generic("exp2", [](double y) { return y <= 0 ? 0.0 : -std::expm1(-2.0 * y); });
  CHECK(std::abs(g.mean() - 0.5) < 1e-8);
  CHECK(std::abs(g.second_moment() - 0.5) < 1e-8);
}

TEST_CASE("admissible box conventions") {
  MarketParams p = base_params();
  AdmissibleBox b = admissible_box(p);
  CHECK(b.xi1.lo == doctest::Approx(0.1));
  CHECK(b.xi1.hi == doctest::Approx(0.9));
  CHECK(b.xi2.lo == doctest::Approx(0.1));
  CHECK(b.xi2.hi == doctest::Approx(0.9));

  p.bound_convention = BoundConvention::Definition21;
  b = admissible_box(p);
  CHECK(b.xi1.lo == doctest::Approx(0.05));
  CHECK(b.xi1.hi == doctest::Approx(0.45));
  CHECK(b.xi2.lo == doctest::Approx(0.1));

  p = base_params();
  p.claims = ClaimDistribution::exponential(2.0);
  b = admissible_box(p);
  CHECK(b.xi1.lo == doctest::Approx(0.2));
  CHECK(b.xi1.hi == doctest::Approx(1.8));
}

TEST_CASE("parameter validation") {
  MarketParams p = base_params();
  CHECK_NOTHROW(p.validate());
  p.gamma_I = -1.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = base_params();
  p.theta = 0.95;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = base_params();
  p.lambda = -0.5;
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("premium rates at the reference equilibrium") {
  const MarketParams p = base_params();
  const PremiumPoint pt{0.28269, 0.38225, 0.0};
  const ResponseStrategy r = response(pt, p);
  const PremiumRates rates = premium_rates(pt, r, p);
  CHECK(std::abs(rates.p2 - (1.0 + 0.38225) * std::exp(-r.d)) < 1e-12);
  CHECK(std::abs(rates.p2 - 0.12619) < 5e-5);

  // Reference: lambda (E l1 + xi1 E l1^2) by quadrature against the density.
  auto dens = [](double y) { return std::exp(-y); };
  auto split = [&](const std::function<double(double)>& g) {
    return oracle::gauss_legendre(g, 0.0, r.d) + oracle::gauss_legendre(g, r.d, 60.0);
  };
  const double el1 = split([&](double y) { return indemnity(y, r).l1 * dens(y); });
  const double el1sq = split([&](double y) { return std::pow(indemnity(y, r).l1, 2) * dens(y); });
  CHECK(std::abs(rates.p1 - (el1 + pt.xi1 * el1sq)) < 1e-7);
  CHECK(std::abs(rates.p1 - 0.28784) < 1e-4);
}

TEST_CASE("premium rate invariants") {
  const MarketParams p = base_params();
  const PremiumPoint pt{0.3, 0.5, 0.0};
  const PremiumRates zero = premium_rates(pt, ResponseStrategy::none(0.0), p);
  CHECK(zero.p1 == 0.0);
  CHECK(zero.p2 == 0.0);

  // Full excess cession at xi2 = theta reprices the book at the insurer's principle.
  ResponseStrategy full{0.0, 0.0, 0.0, 0.0, 0.0};
  const PremiumRates fr = premium_rates({0.3, p.theta, 0.0}, full, p);
  CHECK(fr.p2 == doctest::Approx(p.insurer_premium_rate()).epsilon(1e-12));

  // p2 is linear in (1 + xi2) with the response held fixed.
  const ResponseStrategy r = response(pt, p);
  const double base = premium_rates(pt, r, p).p2 / (1.0 + pt.xi2);
  for (double xi2 : {0.1, 0.7, 1.3}) {
    CHECK(premium_rates({pt.xi1, xi2, 0.0}, r, p).p2 == doctest::Approx(base * (1.0 + xi2)).epsilon(1e-13));
  }
}

#include "reins/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>

#include <json.hpp>

#include "reins/commands.hpp"
#include "reins/errors.hpp"
#include "reins/expo_equilibrium.hpp"
#include "reins/montecarlo.hpp"
#include "reins/reaction_general.hpp"
#include "reins/valuation.hpp"

namespace reins {

namespace {

using Status = ValidationCheck::Status;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(double v) { return format_number(v); }

// Sorted uniform draws on [lo, hi]; the generator is fixed so runs repeat exactly.
std::vector<double> sorted_draws(std::mt19937_64& rng, double lo, double hi, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (auto& x : xs) x = lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

bool strictly_monotone(const std::vector<double>& xs, const std::function<double(double)>& f, bool increasing,
                       std::string& detail) {
  double prev = f(xs.front());
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double cur = f(xs[i]);
    if (increasing ? !(cur > prev) : !(cur < prev)) {
      detail = "monotonicity broken at x=" + fmt(xs[i]);
      return false;
    }
    prev = cur;
  }
  detail = std::to_string(xs.size()) + " points";
  return true;
}

bool closed_form_ok(const MarketParams& p) {
  return p.claims.is_exponential() && p.bound_convention == BoundConvention::Section4;
}

}  // namespace

bool ValidationReport::ok() const {
  return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == Status::Fail; });
}

std::vector<std::string> ValidationReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (c.status == Status::Fail) out.push_back(c.name + ": " + c.detail);
  }
  return out;
}

std::string ValidationReport::to_json() const {
  nlohmann::ordered_json j;
  j["passed"] = ok();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    const char* status = c.status == Status::Pass ? "pass" : (c.status == Status::Fail ? "fail" : "skip");
    j["checks"].push_back({{"name", c.name}, {"status", status}, {"detail", c.detail}});
  }
  return j.dump(2);
}

double tolerance_scale_from_env() {
  const char* raw = std::getenv("REINS_TOL");
  if (raw == nullptr || *raw == '\0') return 1.0;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string("REINS_TOL must be a positive number, got '") + raw + "'");
  }
  return v;
}

ValidationReport run_validation(const MarketParams& params, double tol_scale) {
  ValidationReport report;
  const double t = 0.0;
  std::mt19937_64 rng(0x5eed);

  auto add = [&](const std::string& name, bool applicable, const std::function<Outcome()>& body) {
    ValidationCheck c;
    c.name = name;
    if (!applicable) {
      c.status = Status::Skip;
      c.detail = "needs exponential claims under the section4 convention";
    } else {
      try {
        const Outcome o = body();
        c.status = o.passed ? Status::Pass : Status::Fail;
        c.detail = o.detail;
      } catch (const std::exception& e) {
        c.status = Status::Fail;
        c.detail = std::string("exception: ") + e.what();
      }
    }
    report.checks.push_back(std::move(c));
  };

  const bool cf = closed_form_ok(params);
  const double C_R1 = params.gamma_R1 * params.acc_R1(t) / (params.gamma_I * params.acc_I(t));

  add("e_increasing", true, [&] {
    std::string d;
    const bool ok = strictly_monotone(sorted_draws(rng, 1e-4, 40.0, 400), e_fun, true, d);
    return Outcome{ok, d};
  });
  add("g_decreasing", true, [&] {
    std::string d;
    bool ok = true;
    for (double C : {0.25, 1.0, C_R1, 4.0}) {
      ok = ok && strictly_monotone(sorted_draws(rng, 0.0, 200.0, 400), [C](double x) { return g_fun(x, C); }, false,
                                   d);
    }
    return Outcome{ok, d};
  });
  add("G_decreasing", true, [&] {
    std::string d;
    bool ok = true;
    for (double C : {0.25, 1.0, C_R1, 4.0}) {
      ok = ok && strictly_monotone(sorted_draws(rng, 1e-3, 30.0, 400), [C](double x) { return G_fun(x, C); }, false,
                                   d);
    }
    return Outcome{ok, d};
  });
  add("h1_increasing", cf, [&] {
    const Interval dom = xi1_reaction_bracket(params, t);
    const double pad = 1e-6 * (dom.hi - dom.lo);
    std::string d;
    const bool ok = strictly_monotone(sorted_draws(rng, dom.lo + pad, dom.hi - pad, 300),
                                      [&](double x) { return h1(x, params, t); }, true, d);
    return Outcome{ok, d};
  });
  add("h2_increasing", cf, [&] {
    std::string d;
    const bool ok = strictly_monotone(sorted_draws(rng, 1e-3, 5.0, 300), [&](double x) { return h2(x, params, t); },
                                      true, d);
    return Outcome{ok, d};
  });
  add("h1_minus_h2_single_crossing", cf, [&] {
    const Interval dom = xi1_reaction_bracket(params, t);
    const int n = 2000;
    int changes = 0;
    double prev = 0.0;
    for (int i = 1; i < n; ++i) {
      const double x = dom.lo + (dom.hi - dom.lo) * i / n;
      const double diff = h1(x, params, t) - h2(x, params, t);
      if (i > 1 && (diff > 0.0) != (prev > 0.0)) ++changes;
      prev = diff;
    }
    return Outcome{changes == 1, std::to_string(changes) + " sign change(s)"};
  });
  add("indemnity_continuity_and_balance", true, [&] {
    const AdmissibleBox box = admissible_box(params);
    double worst_jump = 0.0;
    double worst_balance = 0.0;
    bool bounds = true;
    for (int k = 0; k < 200; ++k) {
      const double u1 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const double u3 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const PremiumPoint pt{box.xi1.lo + u1 * (box.xi1.hi - box.xi1.lo), box.xi2.lo + u2 * (box.xi2.hi - box.xi2.lo),
                            u3 * params.T};
      const ResponseStrategy r = response(pt, params);
      const Indemnity at = indemnity(r.d, r);
      const Indemnity above = indemnity(std::nextafter(r.d, 2.0 * r.d + 1.0), r);
      worst_jump = std::max({worst_jump, std::abs(at.l1 - above.l1), std::abs(at.l2 - above.l2),
                             std::abs(at.retained - above.retained)});
      for (int j = 0; j < 20; ++j) {
        const double y = 4.0 * r.d * static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const Indemnity s = indemnity(y, r);
        worst_balance = std::max(worst_balance, std::abs(s.l1 + s.l2 + s.retained - y));
        bounds = bounds && s.l1 >= 0.0 && s.l2 >= 0.0 && s.l1 + s.l2 <= y * (1.0 + 1e-15);
      }
    }
    const double tol = 1e-12 * tol_scale;
    return Outcome{bounds && worst_jump < tol && worst_balance < tol,
                   "max jump " + fmt(worst_jump) + ", max imbalance " + fmt(worst_balance)};
  });
  add("foc_residuals_at_fixed_point", true, [&] {
    PremiumPoint pt;
    if (cf) {
      const LoadingPair bar = unconstrained_fixed_point(params, t);
      pt = {bar.xi1, bar.xi2, t};
    } else {
      pt = general_equilibrium(params, t);
    }
    const double r1 = foc_residual_r1(pt, params);
    const double r2 = foc_residual_r2(pt, params);
    const double tol = 1e-8 * tol_scale;
    return Outcome{std::abs(r1) < tol && std::abs(r2) < tol, "residuals " + fmt(r1) + ", " + fmt(r2)};
  });
  add("reaction_curves_match_closed_form", cf, [&] {
    const Interval dom = xi1_reaction_bracket(params, t);
    double worst = 0.0;
    for (int i = 1; i <= 50; ++i) {
      const double x = dom.lo + (dom.hi - dom.lo) * i / 51.0;
      worst = std::max(worst, std::abs(reaction_xi2(x, params, t) - h2(x, params, t)));
      worst = std::max(worst, std::abs(reaction_xi1(h1(x, params, t), params, t) - x));
    }
    return Outcome{worst < 1e-6 * tol_scale, "max |diff| " + fmt(worst)};
  });
  add("boxed_mutual_best_response", cf, [&] {
    double worst_closed = 0.0;
    double worst_general = 0.0;
    for (int i = 0; i < 30; ++i) {
      const double beta = 0.1 + (6.0 - 0.1) * i / 29.0;
      const MarketParams p = with_param(params, "beta", beta);
      const EquilibriumResult e = constrained_equilibrium(p, t);
      worst_closed = std::max(worst_closed, boxed_best_response_gap(e.point(), p));
      const double br1 = reaction_xi1(e.xi2_star, p, t, BoxClamp::On);
      const double br2 = reaction_xi2(e.xi1_star, p, t, BoxClamp::On);
      worst_general = std::max({worst_general, std::abs(br1 - e.xi1_star), std::abs(br2 - e.xi2_star)});
    }
    const double tol = 1e-8 * tol_scale;
    return Outcome{worst_closed <= tol && worst_general <= tol,
                   "closed-form gap " + fmt(worst_closed) + ", root-finder gap " + fmt(worst_general)};
  });
  add("loadings_nonincreasing_in_time", true, [&] {
    double prev1 = INFINITY;
    double prev2 = INFINITY;
    for (int i = 0; i <= 40; ++i) {
      const EquilibriumResult e = solve_equilibrium(params, params.T * i / 40.0);
      if (e.xi1_star > prev1 + 1e-12 * tol_scale || e.xi2_star > prev2 + 1e-12 * tol_scale) {
        return Outcome{false, "increase at t=" + fmt(params.T * i / 40.0)};
      }
      prev1 = e.xi1_star;
      prev2 = e.xi2_star;
    }
    return Outcome{true, "41 time points"};
  });
  add("montecarlo_matches_closed_form", true, [&] {
    const StrategyPath path = equilibrium_path(params, 201);
    SimConfig sim;
    sim.paths = 20000;
    sim.seed = 7;
    const auto est = estimate_objectives(simulate(path, params, sim), params);
    std::ostringstream os;
    bool ok = true;
    for (const auto& e : est) {
      const Party party = e.value.party;
      const ObjectiveValue cfv = closed_form_objective(party, path, params, 0.0, party_initial_surplus(params, party));
      const double z = e.se_J > 0.0 ? std::abs(e.value.J - cfv.J) / e.se_J : std::abs(e.value.J - cfv.J);
      ok = ok && z <= 3.0 * tol_scale;
      os << party_name(party) << " z=" << fmt(z) << ' ';
    }
    return Outcome{ok, os.str()};
  });

  // Reference values of the built-in parameter set.
  const MarketParams ref = base_params();
  add("reference_equilibrium", true, [&] {
    const EquilibriumResult e = constrained_equilibrium(ref, 0.0);
    const bool ok = std::abs(e.xi1_star - 0.28269) <= 5e-5 && std::abs(e.xi2_star - 0.38225) <= 5e-5 &&
                    std::abs(e.response.q - 0.2825) <= 5e-4 && std::abs(e.response.d - 2.3936) <= 5e-4 &&
                    std::abs(e.response.cap - 0.6761) <= 5e-4 &&
                    std::abs(e.response.retention_limit - 1.7175) <= 5e-4 && e.regime == Regime::Interior;
    return Outcome{ok, "xi=(" + fmt(e.xi1_star) + ", " + fmt(e.xi2_star) + ")"};
  });
  return report;
}

}  // namespace reins

#include "reins/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "reins/errors.hpp"

namespace reins {

const std::string_view kDefaultConfigText = R"(# reference parameter set
t = 0
T = 8
theta = 0.1
eta = 0.9
lambda = 1
claims = exponential
beta = 1
x0_I = 1
x0_R1 = 10
x0_R2 = 10
rho_I = [(0,0.1)]
rho_R1 = [(0,0.1)]
rho_R2 = [(0,0.1)]
gamma_I = 0.1
gamma_R1 = 0.1
gamma_R2 = 0.1
bound_convention = section4
)";

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> to_number(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::pair<double, double>> parse_segments(std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw ConfigError("rate curve must look like [(t0,r0),(t1,r1),...]");
  }
  text = trim(text.substr(1, text.size() - 2));
  std::vector<std::pair<double, double>> out;
  while (!text.empty()) {
    if (text.front() != '(') throw ConfigError("rate curve segment must start with '('");
    const auto close = text.find(')');
    if (close == std::string_view::npos) throw ConfigError("rate curve segment missing ')'");
    const auto body = text.substr(1, close - 1);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) throw ConfigError("rate curve segment needs (t, rate)");
    const auto t = to_number(body.substr(0, comma));
    const auto r = to_number(body.substr(comma + 1));
    if (!t || !r) throw ConfigError("rate curve segment has a non-numeric entry");
    out.emplace_back(*t, *r);
    text = trim(text.substr(close + 1));
    if (!text.empty()) {
      if (text.front() != ',') throw ConfigError("rate curve segments must be comma separated");
      text = trim(text.substr(1));
    }
  }
  if (out.empty()) throw ConfigError("rate curve has no segments");
  return out;
}

ClaimDistribution parse_claims(std::string_view law, std::optional<double> beta, std::optional<double> mu) {
  law = trim(law);
  if (law == "exponential") {
    if (beta && mu) throw ConfigError("give either beta or mu, not both");
    double b = 1.0;
    if (beta) b = *beta;
    if (mu) {
      if (!(*mu > 0.0)) throw ConfigError("mu must be positive");
      b = 1.0 / *mu;
    }
    try {
      return ClaimDistribution::exponential(b);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  if (law.rfind("uniform(", 0) == 0 && law.back() == ')') {
    const auto body = law.substr(8, law.size() - 9);
    const auto comma = body.find(',');
    const auto lo = comma == std::string_view::npos ? std::nullopt : to_number(body.substr(0, comma));
    const auto hi = comma == std::string_view::npos ? std::nullopt : to_number(body.substr(comma + 1));
    if (!lo || !hi) throw ConfigError("uniform claims need uniform(lo,hi)");
    try {
      return ClaimDistribution::uniform(*lo, *hi);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  throw ConfigError("unknown claim law '" + std::string(law) + "' (exponential | uniform(lo,hi))");
}

}  // namespace

RateCurve parse_rate_curve(std::string_view text, double horizon) {
  std::vector<RateCurve::Segment> segs;
  for (const auto& [t, r] : parse_segments(text)) segs.push_back({t, r});
  try {
    return RateCurve(std::move(segs), horizon);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

ModelConfig parse_config(std::string_view text) {
  struct Entry {
    std::string value;
    int line;
  };
  std::map<std::string, Entry, std::less<>> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'name = value', got '" + std::string(line) +
                        "'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty name or value");
    }
    entries[key] = {value, line_no};
  }

  auto where = [&](const std::string& key) { return "line " + std::to_string(entries.at(key).line) + ": "; };
  auto number = [&](const std::string& key) -> std::optional<double> {
    const auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    const auto v = to_number(it->second.value);
    if (!v) throw ConfigError(where(key) + "'" + key + "' is not a number: '" + it->second.value + "'");
    return v;
  };

  static const std::vector<std::string> kKnown = {
      "t",      "T",       "theta",    "eta",      "lambda", "claims", "beta",   "mu",
      "x0_I",   "x0_R1",   "x0_R2",    "rho_I",    "rho_R1", "rho_R2", "gamma_I", "gamma_R1",
      "gamma_R2", "bound_convention", "alpha", "sigma"};
  for (const auto& [key, e] : entries) {
    if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) {
      throw ConfigError("line " + std::to_string(e.line) + ": unknown parameter '" + key + "'");
    }
  }

  ModelConfig cfg;
  MarketParams& p = cfg.params;
  if (auto v = number("T")) p.T = *v;
  if (auto v = number("t")) cfg.t = *v;
  if (auto v = number("theta")) p.theta = *v;
  if (auto v = number("eta")) p.eta = *v;
  if (auto v = number("lambda")) p.lambda = *v;
  if (auto v = number("gamma_I")) p.gamma_I = *v;
  if (auto v = number("gamma_R1")) p.gamma_R1 = *v;
  if (auto v = number("gamma_R2")) p.gamma_R2 = *v;
  if (auto v = number("x0_I")) p.x0_I = *v;
  if (auto v = number("x0_R1")) p.x0_R1 = *v;
  if (auto v = number("x0_R2")) p.x0_R2 = *v;
  // alpha and sigma appear in the reference parameter list but enter no model equation.
  (void)number("alpha");
  (void)number("sigma");

  const auto beta = number("beta");
  const auto mu = number("mu");
  const std::string claims = entries.count("claims") ? entries.at("claims").value : "exponential";
  try {
    p.claims = parse_claims(claims, beta, mu);
  } catch (const ConfigError& e) {
    const std::string key = entries.count("claims") ? "claims" : (beta ? "beta" : "mu");
    throw ConfigError((entries.count(key) ? where(key) : std::string()) + e.what());
  }

  for (auto [key, curve] : {std::pair{"rho_I", &p.rho_I}, {"rho_R1", &p.rho_R1}, {"rho_R2", &p.rho_R2}}) {
    const auto it = entries.find(key);
    try {
      *curve = it == entries.end() ? RateCurve::constant(0.1, p.T) : parse_rate_curve(it->second.value, p.T);
    } catch (const Error& e) {
      throw ConfigError((it == entries.end() ? std::string() : where(key)) + e.what());
    }
  }

  if (const auto it = entries.find("bound_convention"); it != entries.end()) {
    if (it->second.value == "section4") {
      p.bound_convention = BoundConvention::Section4;
    } else if (it->second.value == "definition21") {
      p.bound_convention = BoundConvention::Definition21;
    } else {
      throw ConfigError(where("bound_convention") + "bound_convention must be section4 or definition21");
    }
  }

  try {
    p.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (!(cfg.t >= 0.0) || cfg.t > p.T) {
    throw ConfigError("evaluation time t must lie in [0, T]");
  }
  return cfg;
}

ModelConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace reins

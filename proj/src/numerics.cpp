#include "reins/numerics.hpp"

#include <cmath>

#include "reins/errors.hpp"

namespace reins::numerics {

double bisect(const ScalarFn& f, double lo, double hi, double width, int max_iter) {
  const bool pos_lo = f(lo) > 0.0;
  const bool pos_hi = f(hi) > 0.0;
  if (pos_lo == pos_hi) {
    throw NoRootError("no sign change in bracket", lo, hi);
  }
  for (int i = 0; i < max_iter && hi - lo > width; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at machine resolution
    if ((f(mid) > 0.0) == pos_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

struct SimpsonState {
  const ScalarFn& f;
  int max_depth;
  bool exhausted = false;
};

double simpson_step(SimpsonState& s, double a, double b, double fa, double fm, double fb, double whole,
                    double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = s.f(lm);
  const double frm = s.f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  if (depth >= s.max_depth) {
    s.exhausted = true;
    return left + right + delta / 15.0;
  }
  return simpson_step(s, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_step(s, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double adaptive_simpson(const ScalarFn& f, double a, double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  if (b < a) return -adaptive_simpson(f, b, a, tol, max_depth);
  SimpsonState s{f, max_depth};
  // Seed with four panels so a narrow feature at the midpoint is not missed.
  double total = 0.0;
  constexpr int kSeed = 4;
  const double h = (b - a) / kSeed;
  for (int k = 0; k < kSeed; ++k) {
    const double lo = a + k * h;
    const double hi = (k + 1 == kSeed) ? b : lo + h;
    const double flo = f(lo);
    const double fhi = f(hi);
    const double fmid = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    total += simpson_step(s, lo, hi, flo, fmid, fhi, whole, tol / kSeed, 0);
  }
  if (s.exhausted || !std::isfinite(total)) {
    throw IntegrationError("adaptive Simpson did not converge");
  }
  return total;
}

double composite_simpson(const ScalarFn& f, double a, double b, int panels) {
  if (panels < 2) panels = 2;
  if (panels % 2 != 0) ++panels;
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) {
    sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

}  // namespace reins::numerics

#pragma once

#include <functional>

namespace reins::numerics {

using ScalarFn = std::function<double(double)>;

/// Bisection on [lo, hi] until the bracket is narrower than `width`.
///
/// Points are classified as f > 0 or f <= 0, so a function that is
/// identically zero past its root (e.g. a bounded-support tail integral)
/// still converges to the first crossing. Throws NoRootError when both
/// ends fall in the same class.
double bisect(const ScalarFn& f, double lo, double hi, double width = 1e-12, int max_iter = 400);

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
/// Throws IntegrationError when the recursion depth is exhausted.
double adaptive_simpson(const ScalarFn& f, double a, double b, double tol = 1e-10, int max_depth = 48);

/// Composite Simpson rule with `panels` panels (rounded up to even).
double composite_simpson(const ScalarFn& f, double a, double b, int panels);

}  // namespace reins::numerics

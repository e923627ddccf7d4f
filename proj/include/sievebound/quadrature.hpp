#pragma once
// Adaptive Simpson quadrature with Richardson correction. Deterministic:
// the subdivision pattern depends only on the integrand values.

#include <cmath>
#include <cstdint>

namespace sievebound {

struct quadrature_result {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::int64_t evaluations = 0;
  bool converged = true;  // false when max depth was hit before tolerance
};

namespace detail {

template <class F>
void adaptive_simpson_rec(F& f, double a, double m, double b, double fa,
                          double fm, double fb, double whole, double tol,
                          int depth, quadrature_result& out) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  out.evaluations += 2;
  double h6 = (b - a) / 12.0;
  double left = h6 * (fa + 4.0 * flm + fm);
  double right = h6 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    out.value += left + right + delta / 15.0;
    out.abs_error_estimate += std::abs(delta) / 15.0;
    if (depth <= 0 && std::abs(delta) > 15.0 * tol) out.converged = false;
    return;
  }
  adaptive_simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1,
                       out);
  adaptive_simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1,
                       out);
}

}  // namespace detail

template <class F>
quadrature_result adaptive_simpson(F&& f, double a, double b, double tol,
                                   int max_depth = 48) {
  quadrature_result out;
  if (!(b > a)) return out;
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  out.evaluations = 3;
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  detail::adaptive_simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, max_depth,
                               out);
  return out;
}

}  // namespace sievebound

#pragma once
// Two-variable vector-sieve functions on the constraint line
// s1/sigma1 + s2/sigma2 = 1:
//   upper: F(sigma1, sigma2) = inf  F1(s1) F2(s2),  s1 > 0, s2 >= 1
//   lower: f(sigma1, sigma2) = sup  f1(s1) F2(s2) + f2(s2) F1(s1)
//                                   - F1(s1) F2(s2),  s1 >= 1, s2 >= 2
// One-dimensional in s1 after eliminating s2. A dense grid brackets the
// optimum (the objective is piecewise-defined and need not be convex),
// golden-section search refines it. Ties resolve to the smallest s1; the
// value, not the argument, is what downstream formulas consume.

#include <cmath>
#include <stdexcept>

#include "sievebound/sieve_functions.hpp"

namespace sievebound {

struct combiner_result {
  double value = 0.0;
  double s1 = 0.0, s2 = 0.0;
  bool feasible = false;
};

namespace detail {

template <class G>
double golden_section(G&& g, double a, double b, bool maximize) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double g1 = g(x1), g2 = g(x2);
  for (int i = 0; i < 90 && b - a > 1e-13; ++i) {
    bool shrink_right = maximize ? (g1 > g2) : (g1 < g2);
    if (shrink_right) {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - phi * (b - a);
      g1 = g(x1);
    } else {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + phi * (b - a);
      g2 = g(x2);
    }
  }
  return 0.5 * (a + b);
}

constexpr double combiner_grid_step = 1e-4;

// Dense scan over [lo, hi] at the grid step (endpoint included), then
// golden-section refinement around the bracket. Strict improvement keeps
// the smallest optimal s1 on plateaus.
template <class G>
combiner_result scan_and_refine(G&& g, double lo, double hi, bool maximize) {
  double h = combiner_grid_step;
  if (hi - lo < h) h = (hi - lo) / 1000.0;
  double best_s = lo, best_v = g(lo);
  auto better = [&](double v) { return maximize ? v > best_v : v < best_v; };
  auto n = static_cast<long>(std::floor((hi - lo) / h));
  for (long k = 1; k <= n; ++k) {
    double s = lo + static_cast<double>(k) * h;
    double v = g(s);
    if (better(v)) {
      best_v = v;
      best_s = s;
    }
  }
  if (better(g(hi))) {
    best_v = g(hi);
    best_s = hi;
  }
  double a = best_s - h < lo ? lo : best_s - h;
  double b = best_s + h > hi ? hi : best_s + h;
  double refined = golden_section(g, a, b, maximize);
  double rv = g(refined);
  if (better(rv)) {
    best_v = rv;
    best_s = refined;
  }
  combiner_result r;
  r.value = best_v;
  r.s1 = best_s;
  r.feasible = true;
  return r;
}

}  // namespace detail

inline combiner_result F_combined(double sigma1, double sigma2,
                                  const sieve_table_pair& tables) {
  if (!(sigma1 > 0.0) || !(sigma2 > 0.0))
    throw std::domain_error("F_combined: sigma1, sigma2 must be positive");
  if (sigma2 <= 1.0) return {};  // s2 >= 1 needs s2/sigma2 <= 1 with room for s1
  double hi = sigma1 * (1.0 - 1.0 / sigma2);
  auto s2_of = [&](double s1) {
    double s2 = sigma2 * (1.0 - s1 / sigma1);
    return s2 < 1.0 ? 1.0 : s2;  // endpoint rounding only
  };
  auto g = [&](double s1) {
    return eval(tables.semilinear, fn_kind::upper, s1) *
           eval(tables.linear, fn_kind::upper, s2_of(s1));
  };
  double lo = detail::combiner_grid_step < hi ? detail::combiner_grid_step
                                              : hi / 1000.0;
  combiner_result r = detail::scan_and_refine(g, lo, hi, /*maximize=*/false);
  r.s2 = s2_of(r.s1);
  return r;
}

inline combiner_result f_combined(double sigma1, double sigma2,
                                  const sieve_table_pair& tables) {
  if (!(sigma1 > 0.0) || !(sigma2 > 0.0))
    throw std::domain_error("f_combined: sigma1, sigma2 must be positive");
  double slack = 1.0 - 1.0 / sigma1 - 2.0 / sigma2;
  if (slack < -1e-12) return {};
  if (slack <= 1e-12) {  // constraint set is the single point (1, 2)
    combiner_result r;
    r.value = -eval(tables.semilinear, fn_kind::upper, 1.0) *
              eval(tables.linear, fn_kind::upper, 2.0);
    r.s1 = 1.0;
    r.s2 = 2.0;
    r.feasible = true;
    return r;
  }
  double hi = sigma1 * (1.0 - 2.0 / sigma2);
  auto s2_of = [&](double s1) {
    double s2 = sigma2 * (1.0 - s1 / sigma1);
    return s2 < 2.0 ? 2.0 : s2;  // endpoint rounding only
  };
  auto g = [&](double s1) {
    double s2 = s2_of(s1);
    double F1 = eval(tables.semilinear, fn_kind::upper, s1);
    double F2 = eval(tables.linear, fn_kind::upper, s2);
    double f1 = eval(tables.semilinear, fn_kind::lower, s1);
    double f2 = eval(tables.linear, fn_kind::lower, s2);
    return f1 * F2 + f2 * F1 - F1 * F2;
  };
  combiner_result r = detail::scan_and_refine(g, 1.0, hi, /*maximize=*/true);
  r.s2 = s2_of(r.s1);
  return r;
}

}  // namespace sievebound

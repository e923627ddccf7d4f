#pragma once
// The two one-dimensional integrals feeding the objectives.
//
// Switching-principle integral, for theta1 in (1/4, 1/2]:
//   C(theta1) = int_0^{1-2 theta1} log((1-b-theta1)/theta1)
//               / (b^{1/2} (1-b)) db
// The b^{-1/2} endpoint singularity is removed by b = u^2; the integrand
// becomes 2 log((1-u^2-theta1)/theta1) / (1-u^2) on [0, sqrt(1-2 theta1)].
//
// Weighted-sieve integral, for 0 < theta2 < theta < 1/2, theta2 < theta1:
//   I(theta, theta1, theta2) = int_{theta2}^{theta} (1 - a/theta)
//       F((1-2a)/(2 theta1), (1-2a)/(2 theta2)) da / a
// where F is the combined upper sieve function.

#include <cmath>
#include <stdexcept>
#include <string>

#include "sievebound/quadrature.hpp"
#include "sievebound/vector_combiner.hpp"

namespace sievebound {

inline quadrature_result integral_C(double theta1) {
  if (!(theta1 > 0.25 && theta1 <= 0.5))
    throw std::domain_error("integral_C: need 1/4 < theta1 <= 1/2");
  double ub = std::sqrt(1.0 - 2.0 * theta1);
  if (ub == 0.0) return {0.0, 0.0, 0, true};
  auto g = [&](double u) {
    double arg = (1.0 - u * u - theta1) / theta1;
    if (arg < 1.0) arg = 1.0;  // exact 1 at the right endpoint, fp dust below
    return 2.0 * std::log(arg) / (1.0 - u * u);
  };
  return adaptive_simpson(g, 0.0, ub, 1e-9);
}

inline quadrature_result integral_I(double theta, double theta1, double theta2,
                                    const sieve_table_pair& tables) {
  if (!(theta2 > 0.0 && theta2 < theta && theta < 0.5))
    throw std::domain_error("integral_I: need 0 < theta2 < theta < 1/2");
  if (!(theta2 < theta1 && theta1 < 0.5))
    throw std::domain_error("integral_I: need theta2 < theta1 < 1/2");
  auto g = [&](double a) {
    double s1 = (1.0 - 2.0 * a) / (2.0 * theta1);
    double s2 = (1.0 - 2.0 * a) / (2.0 * theta2);
    combiner_result F = F_combined(s1, s2, tables);
    if (!F.feasible)
      throw std::domain_error(
          "integral_I: combined upper function infeasible at alpha = " +
          std::to_string(a));
    return (1.0 - a / theta) * F.value / a;
  };
  return adaptive_simpson(g, theta2, theta, 1e-7);
}

}  // namespace sievebound

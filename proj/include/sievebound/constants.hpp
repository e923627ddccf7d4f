#pragma once
// Euler-product constants entering the main and secondary terms:
//   C  = 9/4 prod_{p>3, p=3(4)} (1 - (3p-1)/(p-1)^3) prod_{p=1(4)} (1 - 1/(p-1)^2)
//   c1 = prod_{p>3} (1 + 1/(p-2)^2)
//   c2 = prod_{p>2} (1 - 1/(p-1)^2)          (twin-prime constant)
//   c3 = 2/sqrt(pi) prod_{p=1(4)} (1-1/p)^{1/2} (1 + p^2/(p-1)^3)
//                   prod_{p=3(4)} (1-1/p)^{1/2}
// C, c1, c2 converge absolutely (factors 1 + O(1/p^2)); c3's two residue
// classes are only jointly, conditionally convergent, so an accelerated
// form divides out the mod-4 Mertens model factor (1 - chi4(p)/p)^{1/2} and
// reinstates its limit via L(1, chi4) = pi/4, which exactly cancels the
// 2/sqrt(pi) prefactor:
//   c3 = prod_{p=1(4)} (1-1/p)(1 + p^2/(p-1)^3) prod_{p=3(4)} (1-1/p^2)^{1/2}
// with absolutely convergent factors.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "sievebound/prime_sieve.hpp"

namespace sievebound {

// Tail bound for the absolutely convergent products: sum_{p>X} 3/p^2 and
// friends are below 6/(X log X) for X >= 100 (factor 2 headroom over the
// prime-counting estimate keeps the bound valid for C's larger numerator).
inline double product_tail_error(std::uint64_t cutoff) {
  double x = static_cast<double>(cutoff);
  return 6.0 / (x * std::log(x));
}

// Statement variant of C's second product uses (p-2)^2 in place of the
// derivation's (p-1)^2; kept for comparison.
inline double compute_C(std::uint64_t cutoff, bool variant_second_product = false) {
  if (cutoff < 2) throw std::domain_error("compute_C: cutoff too small");
  double prod = 2.25;
  for_each_prime(cutoff, [&](std::uint64_t p) {
    double pd = static_cast<double>(p);
    if (p % 4 == 3 && p > 3)
      prod *= 1.0 - (3.0 * pd - 1.0) / ((pd - 1.0) * (pd - 1.0) * (pd - 1.0));
    else if (p % 4 == 1) {
      double q = variant_second_product ? pd - 2.0 : pd - 1.0;
      prod *= 1.0 - 1.0 / (q * q);
    }
  });
  return prod;
}

inline double compute_c1(std::uint64_t cutoff) {
  if (cutoff < 2) throw std::domain_error("compute_c1: cutoff too small");
  double prod = 1.0;
  for_each_prime(cutoff, [&](std::uint64_t p) {
    if (p <= 3) return;
    double q = static_cast<double>(p) - 2.0;
    prod *= 1.0 + 1.0 / (q * q);
  });
  return prod;
}

inline double compute_c2(std::uint64_t cutoff) {
  if (cutoff < 2) throw std::domain_error("compute_c2: cutoff too small");
  double prod = 1.0;
  for_each_prime(cutoff, [&](std::uint64_t p) {
    if (p <= 2) return;
    double q = static_cast<double>(p) - 1.0;
    prod *= 1.0 - 1.0 / (q * q);
  });
  return prod;
}

// accelerated = false gives the raw interleaved partial product (converges
// like 1/log cutoff; kept for the two-cutoff stability check).
inline double compute_c3(std::uint64_t cutoff, bool accelerated = true) {
  if (cutoff < 2) throw std::domain_error("compute_c3: cutoff too small");
  double prod = accelerated ? 1.0 : 2.0 / std::sqrt(std::numbers::pi);
  for_each_prime(cutoff, [&](std::uint64_t p) {
    double pd = static_cast<double>(p);
    if (p % 4 == 1) {
      double q = pd - 1.0;
      double local = 1.0 + pd * pd / (q * q * q);
      if (accelerated)
        prod *= (1.0 - 1.0 / pd) * local;
      else
        prod *= std::sqrt(1.0 - 1.0 / pd) * local;
    } else if (p % 4 == 3) {
      if (accelerated)
        prod *= std::sqrt(1.0 - 1.0 / (pd * pd));
      else
        prod *= std::sqrt(1.0 - 1.0 / pd);
    }
  });
  return prod;
}

struct constants_report {
  std::uint64_t cutoff = 0;
  double C = 0, c1 = 0, c2 = 0, c3 = 0;
  double tail_error = 0;  // common bound for the absolutely convergent forms
};

inline constants_report compute_constants(std::uint64_t cutoff) {
  constants_report r;
  r.cutoff = cutoff;
  r.tail_error = product_tail_error(cutoff);
  double c = 2.25, c1 = 1.0, c2 = 1.0, c3 = 1.0;
  for_each_prime(cutoff, [&](std::uint64_t p) {
    double pd = static_cast<double>(p);
    double q1 = pd - 1.0, q2 = pd - 2.0;
    if (p % 4 == 3 && p > 3) c *= 1.0 - (3.0 * pd - 1.0) / (q1 * q1 * q1);
    if (p % 4 == 1) c *= 1.0 - 1.0 / (q1 * q1);
    if (p > 3) c1 *= 1.0 + 1.0 / (q2 * q2);
    if (p > 2) c2 *= 1.0 - 1.0 / (q1 * q1);
    if (p % 4 == 1) c3 *= (1.0 - 1.0 / pd) * (1.0 + pd * pd / (q1 * q1 * q1));
    if (p % 4 == 3) c3 *= std::sqrt(1.0 - 1.0 / (pd * pd));
  });
  r.C = c;
  r.c1 = c1;
  r.c2 = c2;
  r.c3 = c3;
  return r;
}

}  // namespace sievebound

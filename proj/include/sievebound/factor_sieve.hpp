#pragma once
// Smallest-prime-factor table. Full factorizations, Omega and omega come
// out by repeated division; the empirical checks lean on it for every
// enumerated set member.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sievebound {

struct factor_sieve {
  std::uint64_t limit = 0;
  std::vector<std::uint32_t> spf;  // spf[n] = smallest prime factor; spf[1] = 1

  bool is_prime(std::uint64_t n) const { return n >= 2 && spf[n] == n; }

  // (prime, exponent) pairs in increasing prime order.
  std::vector<std::pair<std::uint32_t, int>> factorize(std::uint64_t n) const {
    std::vector<std::pair<std::uint32_t, int>> out;
    while (n > 1) {
      std::uint32_t p = spf[n];
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
    return out;
  }

  int big_omega(std::uint64_t n) const {  // with multiplicity
    int k = 0;
    while (n > 1) {
      std::uint32_t p = spf[n];
      while (n % p == 0) {
        n /= p;
        ++k;
      }
    }
    return k;
  }

  int small_omega(std::uint64_t n) const {  // distinct primes
    int k = 0;
    while (n > 1) {
      std::uint32_t p = spf[n];
      while (n % p == 0) n /= p;
      ++k;
    }
    return k;
  }

  // Smallest prime factor congruent to 3 mod 4, or 0 when none exists.
  std::uint32_t min_q_factor(std::uint64_t n) const {
    while (n > 1) {
      std::uint32_t p = spf[n];
      if (p % 4 == 3) return p;
      while (n % p == 0) n /= p;
    }
    return 0;
  }

  // All prime factors congruent to 1 mod 4 (true for n = 1).
  bool all_factors_1_mod_4(std::uint64_t n) const {
    while (n > 1) {
      std::uint32_t p = spf[n];
      if (p % 4 != 1) return false;
      while (n % p == 0) n /= p;
    }
    return true;
  }

  std::uint64_t euler_phi(std::uint64_t n) const {
    std::uint64_t out = n;
    while (n > 1) {
      std::uint32_t p = spf[n];
      out -= out / p;
      while (n % p == 0) n /= p;
    }
    return out;
  }
};

inline factor_sieve build_factor_sieve(std::uint64_t limit) {
  if (limit < 1) throw std::domain_error("build_factor_sieve: limit >= 1");
  if (limit > 400000000ull)
    throw std::domain_error(
        "build_factor_sieve: limit over the in-memory cap; the census path "
        "streams segments instead");
  factor_sieve fs;
  fs.limit = limit;
  fs.spf.assign(limit + 1, 0);
  if (limit >= 1) fs.spf[1] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (fs.spf[i] != 0) continue;
    fs.spf[i] = static_cast<std::uint32_t>(i);
    for (std::uint64_t j = i * i; j <= limit; j += i)
      if (fs.spf[j] == 0) fs.spf[j] = static_cast<std::uint32_t>(i);
  }
  return fs;
}

}  // namespace sievebound

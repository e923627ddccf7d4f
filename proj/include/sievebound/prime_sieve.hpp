#pragma once
// Prime generation. A plain sieve serves moderate limits; a segmented
// walk streams primes to 1e9-scale limits in bounded memory. Both are
// deterministic and shared by the constants products and the empirical
// counts.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sievebound {

// Primes <= limit as a vector (limit capped to keep the bitmap sane).
inline std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
  if (limit > 400000000ull)
    throw std::domain_error("primes_up_to: limit too large, use for_each_prime");
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    primes.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
  }
  return primes;
}

// Streams primes <= limit in increasing order through fn(p).
template <class Fn>
void for_each_prime(std::uint64_t limit, Fn&& fn) {
  if (limit < 2) return;
  std::uint64_t root = 1;
  while ((root + 1) * (root + 1) <= limit) ++root;
  auto base = primes_up_to(root);
  for (auto p : base) fn(static_cast<std::uint64_t>(p));

  constexpr std::uint64_t segment = 1 << 22;
  std::vector<bool> composite;
  for (std::uint64_t lo = root + 1; lo <= limit; lo += segment) {
    std::uint64_t hi = lo + segment - 1 < limit ? lo + segment - 1 : limit;
    composite.assign(hi - lo + 1, false);
    for (auto bp : base) {
      std::uint64_t p = bp;
      std::uint64_t start = ((lo + p - 1) / p) * p;
      if (start < p * p) start = p * p;
      for (std::uint64_t m = start; m <= hi; m += p) composite[m - lo] = true;
    }
    for (std::uint64_t v = lo; v <= hi; ++v)
      if (!composite[v - lo]) fn(v);
  }
}

inline std::uint64_t count_primes(std::uint64_t limit) {
  std::uint64_t n = 0;
  for_each_prime(limit, [&](std::uint64_t) { ++n; });
  return n;
}

}  // namespace sievebound

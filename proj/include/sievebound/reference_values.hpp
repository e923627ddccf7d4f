#pragma once
// Frozen reference values. The Euler-product constants were produced by
// the deterministic sequential partial products of constants.hpp at cutoff
// 1e8 and cross-checked at 1e6/1e7 (two-cutoff stability) and, for c3,
// against the direct S2 summation; see the README's reference-values
// section. The objective assembly consumes these so that optimizer results
// do not depend on re-sieving to 1e8 at every call.

#include <cstdint>

namespace sievebound::reference {

inline constexpr std::uint64_t constants_cutoff = 100000000;  // 1e8

inline constexpr double C_main = 1.7727203165057785;
inline constexpr double C_statement_variant = 1.677293542498331;
inline constexpr double c1 = 1.2025025819830775;
inline constexpr double c2 = 0.6601618161885073;
inline constexpr double c3 = 1.0606886788621608;

// Classical twin-prime constant, for the c2 sanity check.
inline constexpr double twin_prime_constant = 0.6601618158468696;

// Parameter point and targets of the published optimum.
inline constexpr double opt_lambda = 0.14;
inline constexpr double opt_theta = 0.23;
inline constexpr double opt_theta1 = 0.449;
inline constexpr double opt_theta2 = 0.011;
inline constexpr double published_H = 1.2471;
inline constexpr double published_G = 0.0376;
inline constexpr double published_G_theta1 = 0.431;
inline constexpr double published_G_theta2 = 0.0219;
inline constexpr double published_omega = 11.4907;
inline constexpr int published_omega_integer = 11;

}  // namespace sievebound::reference

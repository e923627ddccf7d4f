#pragma once
// Monotone cubic interpolation on a uniform grid (Fritsch-Carlson limited
// Hermite). Preserves monotone runs of the data, which linear interpolation
// also does, but at fourth-order-compatible accuracy.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace sievebound::detail {

inline double limited_slope(double d_prev, double d_next) {
  if (d_prev * d_next <= 0.0) return 0.0;  // local extremum: flatten
  double m = 0.5 * (d_prev + d_next);
  double cap = 3.0 * std::min(std::abs(d_prev), std::abs(d_next));
  return std::copysign(std::min(std::abs(m), cap), m);
}

inline double hermite(double y0, double y1, double m0, double m1, double h,
                      double t) {
  double t2 = t * t, t3 = t2 * t;
  return y0 * (2 * t3 - 3 * t2 + 1) + h * m0 * (t3 - 2 * t2 + t) +
         y1 * (-2 * t3 + 3 * t2) + h * m1 * (t3 - t2);
}

// Interpolate values[] (index i corresponds to abscissa i*step) at s.
// Only indices in [lo, hi] are valid; neighbors are clamped to that range.
inline double interp_monotone_cubic(const std::vector<double>& values,
                                    double step, double s, std::size_t lo,
                                    std::size_t hi) {
  double u = s / step;
  auto i = static_cast<std::size_t>(u);
  if (i < lo) i = lo;
  if (i >= hi) i = hi - 1;
  double t = u - static_cast<double>(i);
  auto at = [&](std::size_t j) {
    return values[std::clamp(j, lo, hi)];
  };
  double dm = (i > lo) ? values[i] - values[i - 1] : values[i + 1] - values[i];
  double d0 = values[i + 1] - values[i];
  double dp = (i + 2 <= hi) ? at(i + 2) - values[i + 1] : d0;
  double m0 = limited_slope(dm, d0) / step;
  double m1 = limited_slope(d0, dp) / step;
  return hermite(values[i], values[i + 1], m0, m1, step, t);
}

}  // namespace sievebound::detail

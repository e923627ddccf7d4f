#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "sievebound/interpolation.hpp"

using sievebound::detail::hermite;
using sievebound::detail::interp_monotone_cubic;
using sievebound::detail::limited_slope;

TEST_CASE("limited slope flattens at extrema and caps steep averages") {
  CHECK(limited_slope(1.0, -1.0) == 0.0);
  CHECK(limited_slope(-2.0, 3.0) == 0.0);
  CHECK(limited_slope(0.0, 5.0) == 0.0);
  CHECK(limited_slope(1.0, 1.0) == 1.0);
  CHECK(limited_slope(1.0, 9.0) == 3.0);  // avg 5 capped at 3*min
  CHECK(limited_slope(-1.0, -9.0) == -3.0);
  CHECK(limited_slope(2.0, 4.0) == 3.0);  // avg under the cap
}

TEST_CASE("hermite basis hits endpoints and endpoint slopes") {
  double h = 0.25;
  CHECK(hermite(2.0, 5.0, 1.0, -1.0, h, 0.0) == 2.0);
  CHECK(hermite(2.0, 5.0, 1.0, -1.0, h, 1.0) == 5.0);
  // derivative at t=0 via tiny finite difference equals m0
  double eps = 1e-7;
  double d0 = (hermite(2.0, 5.0, 1.0, -1.0, h, eps) -
               hermite(2.0, 5.0, 1.0, -1.0, h, 0.0)) /
              (eps * h);
  CHECK(std::abs(d0 - 1.0) < 1e-5);
}

TEST_CASE("interpolation reproduces linear data exactly") {
  double step = 0.01;
  std::vector<double> v(101);
  for (int i = 0; i <= 100; ++i) v[i] = 3.0 * i * step + 1.0;
  for (double s : {0.005, 0.123, 0.5004, 0.98, 0.9999})
    CHECK(interp_monotone_cubic(v, step, s, 0, 100) ==
          Catch::Approx(3.0 * s + 1.0).epsilon(0).margin(1e-14));
}

TEST_CASE("interpolation is exact at the nodes") {
  double step = 0.1;
  std::vector<double> v = {0.0, 0.3, 0.4, 1.0, 1.1, 1.15, 2.0};
  for (int i = 1; i < 6; ++i)
    CHECK(interp_monotone_cubic(v, step, i * step, 0, 6) ==
          Catch::Approx(v[i]).epsilon(0).margin(1e-15));
}

TEST_CASE("monotone data stays monotone between nodes") {
  double step = 0.05;
  std::vector<double> v(41);
  for (int i = 0; i <= 40; ++i) v[i] = std::sqrt(i * step);  // concave, increasing
  double prev = -1.0;
  for (int j = 0; j <= 4000; ++j) {
    double s = 2.0 * j / 4000.0;
    if (s >= 40 * step) break;
    double y = interp_monotone_cubic(v, step, s, 0, 40);
    CHECK(y >= prev - 1e-14);
    prev = y;
  }
}

TEST_CASE("smooth monotone function interpolated to better than 1e-6") {
  double step = 1e-3;
  int n = 1500;
  std::vector<double> v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = std::sin(i * step);
  double worst = 0.0;
  for (int j = 0; j < 10000; ++j) {
    double s = 1.4 * j / 10000.0 + 0.01;
    double y = interp_monotone_cubic(v, step, s, 0, n);
    worst = std::max(worst, std::abs(y - std::sin(s)));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("neighbor clamping keeps boundary panels finite and close") {
  double step = 0.1;
  std::vector<double> v(11);
  for (int i = 0; i <= 10; ++i) v[i] = std::exp(i * step);
  // First and last panel fall back to one-sided differences: second order,
  // so the error stays within ~f'' h^2 even at the steep end.
  double y0 = interp_monotone_cubic(v, step, 0.03, 0, 10);
  double y1 = interp_monotone_cubic(v, step, 0.97, 0, 10);
  CHECK(std::abs(y0 - std::exp(0.03)) < std::exp(1.0) * step * step);
  CHECK(std::abs(y1 - std::exp(0.97)) < std::exp(1.0) * step * step);
  // Quarter the step: the boundary error must drop by at least 4x.
  double fine = step / 4.0;
  std::vector<double> w(41);
  for (int i = 0; i <= 40; ++i) w[i] = std::exp(i * fine);
  double y2 = interp_monotone_cubic(w, fine, 0.97, 0, 40);
  CHECK(std::abs(y2 - std::exp(0.97)) <
        std::abs(y1 - std::exp(0.97)) / 4.0);
}

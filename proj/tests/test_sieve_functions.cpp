#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "sievebound/sieve_functions.hpp"

using namespace sievebound;

namespace {

// Shared 60-unit tables, built once per process.
const sieve_table_pair& tables() {
  static sieve_table_pair t = tabulate_pair(60.0, 1e-4, "");
  return t;
}

// Independent continuation of the semi-linear lower function from its left
// end: with the closed upper form on (0, 2],
//   sqrt(s) f1(s) = int_1^s (1/2) t^{-1/2} F1(t-1) dt,
// and the substitution u = sqrt(t-1) turns the integrand into the analytic
// 2 c0 / sqrt(1+u^2), c0 = sqrt(e^gamma / pi). Fine fixed-step Simpson.
double f1_via_delay_system(double s) {
  double c0 = std::sqrt(exp_gamma / std::numbers::pi);
  double u_end = std::sqrt(s - 1.0);
  int n = 20000;
  double h = u_end / n, acc = 0.0;
  auto g = [&](double u) { return 2.0 * c0 / std::sqrt(1.0 + u * u); };
  for (int i = 0; i < n; ++i) {
    double u0 = i * h;
    acc += h / 6.0 * (g(u0) + 4.0 * g(u0 + 0.5 * h) + g(u0 + h));
  }
  return acc / std::sqrt(s);
}

// Same for the linear lower function: s f2(s) = int_2^s F2(t-1) dt with
// F2(t-1) = 2 e^gamma / (t-1), smooth on [2, 4].
double f2_via_delay_system(double s) {
  int n = 20000;
  double h = (s - 2.0) / n, acc = 0.0;
  auto g = [&](double t) { return 2.0 * exp_gamma / (t - 1.0); };
  for (int i = 0; i < n; ++i) {
    double t0 = 2.0 + i * h;
    acc += h / 6.0 * (g(t0) + 4.0 * g(t0 + 0.5 * h) + g(t0 + h));
  }
  return acc / s;
}

}  // namespace

TEST_CASE("closed forms at frozen spot values") {
  CHECK(eval_F1_closed(2.0) == Catch::Approx(1.0648314032).margin(1e-9));
  CHECK(eval_f1_closed(2.0) == Catch::Approx(0.9385142734).margin(1e-9));
  CHECK(eval_F2_closed(2.0) == Catch::Approx(1.7810724179901979).margin(1e-12));
  CHECK(eval_f2_closed(4.0) == Catch::Approx(0.9783540227).margin(1e-9));
  CHECK(eval_f1_closed(1.0) == 0.0);
  CHECK(eval_f2_closed(2.0) == 0.0);
}

TEST_CASE("closed forms reject arguments outside their ranges") {
  CHECK_THROWS_AS(eval_F1_closed(0.0), std::domain_error);
  CHECK_THROWS_AS(eval_F1_closed(2.5), std::domain_error);
  CHECK_THROWS_AS(eval_f1_closed(0.9), std::domain_error);
  CHECK_THROWS_AS(eval_F2_closed(0.5), std::domain_error);
  CHECK_THROWS_AS(eval_f2_closed(1.5), std::domain_error);
}

TEST_CASE("upper forms satisfy their delay equations on the closed ranges") {
  // On (0, 2] the semi-linear lower delay term vanishes, so sqrt(s) F1 is
  // constant; on [1, 3] the linear one vanishes, so s F2 is constant.
  double ref1 = std::sqrt(0.5) * eval_F1_closed(0.5);
  for (double s : {0.7, 1.0, 1.5, 2.0})
    CHECK(std::sqrt(s) * eval_F1_closed(s) == Catch::Approx(ref1).margin(1e-12));
  for (double s : {1.0, 1.7, 2.4, 3.0})
    CHECK(s * eval_F2_closed(s) ==
          Catch::Approx(2.0 * exp_gamma).margin(1e-12));
}

TEST_CASE("lower closed forms match an independent delay-system march") {
  for (double s : {1.5, 2.0, 2.5, 3.0})
    CHECK(f1_via_delay_system(s) ==
          Catch::Approx(eval_f1_closed(s)).margin(1e-9));
  for (double s : {2.5, 3.0, 3.5, 4.0})
    CHECK(f2_via_delay_system(s) ==
          Catch::Approx(eval_f2_closed(s)).margin(1e-9));
}

TEST_CASE("tabulation serves closed ranges exactly and marches beyond") {
  const auto& t = tables();
  CHECK(eval(t.semilinear, fn_kind::upper, 1.3) == eval_F1_closed(1.3));
  CHECK(eval(t.semilinear, fn_kind::lower, 2.2) == eval_f1_closed(2.2));
  CHECK(eval(t.linear, fn_kind::upper, 2.9) == eval_F2_closed(2.9));
  CHECK(eval(t.linear, fn_kind::lower, 3.7) == eval_f2_closed(3.7));
  // marched spot value, frozen
  CHECK(eval(t.linear, fn_kind::upper, 3.5) ==
        Catch::Approx(1.0651935580).margin(1e-8));
  CHECK_THROWS_AS(eval(t.semilinear, fn_kind::lower, 0.5), std::domain_error);
  CHECK_THROWS_AS(eval(t.linear, fn_kind::upper, 0.5), std::domain_error);
  // beyond the tabulated range both functions are flat
  CHECK(eval(t.linear, fn_kind::upper, 80.0) == t.linear.F_values.back());
}

TEST_CASE("marched continuation matches an independent integral route") {
  const auto& t = tables();
  // s F2(s) - 3 F2(3) = int_3^s f2(t-1) dt on (3, 4], where f2 is closed.
  for (double s : {3.2, 3.6, 4.0}) {
    int n = 4000;
    double h = (s - 3.0) / n, acc = 0.0;
    auto g = [&](double tt) { return eval_f2_closed(tt - 1.0); };
    for (int i = 0; i < n; ++i) {
      double t0 = 3.0 + i * h;
      acc += h / 6.0 * (g(t0) + 4.0 * g(t0 + 0.5 * h) + g(t0 + h));
    }
    double expected = (3.0 * eval_F2_closed(3.0) + acc) / s;
    CHECK(eval(t.linear, fn_kind::upper, s) ==
          Catch::Approx(expected).margin(1e-8));
  }
}

TEST_CASE("monotone: upper functions fall, lower functions rise") {
  const auto& t = tables();
  auto check_monotone = [](const std::vector<double>& v, bool rising) {
    std::size_t start = 0;
    while (start < v.size() && std::isnan(v[start])) ++start;
    for (std::size_t i = start + 1; i < v.size(); ++i) {
      double d = v[i] - v[i - 1];
      if (rising)
        REQUIRE(d >= -1e-10);
      else
        REQUIRE(d <= 1e-10);
    }
  };
  check_monotone(t.semilinear.F_values, false);
  check_monotone(t.semilinear.f_values, true);
  check_monotone(t.linear.F_values, false);
  check_monotone(t.linear.f_values, true);
}

TEST_CASE("lower bounds upper across the shared domain") {
  const auto& t = tables();
  for (const auto* tab : {&t.semilinear, &t.linear}) {
    auto start = static_cast<std::size_t>(tab->f_domain_min / tab->step + 0.5);
    for (std::size_t i = start; i < tab->count(); ++i)
      REQUIRE(tab->f_values[i] <= tab->F_values[i] + 1e-8);
  }
}

TEST_CASE("both functions meet at the far end") {
  const auto& t = tables();
  CHECK(std::abs(t.semilinear.F_values.back() - t.semilinear.f_values.back()) <
        1e-6);
  CHECK(std::abs(t.linear.F_values.back() - t.linear.f_values.back()) < 1e-6);
  CHECK(t.semilinear.F_values.back() == Catch::Approx(1.0).margin(1e-6));
  CHECK(t.linear.F_values.back() == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("halving the step moves tabulated values by less than 1e-7") {
  sieve_function_table coarse = tabulate(semilinear_dimension, 12.0, 2e-4);
  sieve_function_table fine = tabulate(semilinear_dimension, 12.0, 1e-4);
  for (double s : {3.5, 4.8, 6.3, 8.1, 10.9, 11.9}) {
    CHECK(std::abs(eval(coarse, fn_kind::upper, s) -
                   eval(fine, fn_kind::upper, s)) < 1e-7);
    CHECK(std::abs(eval(coarse, fn_kind::lower, s) -
                   eval(fine, fn_kind::lower, s)) < 1e-7);
  }
}

TEST_CASE("tabulate validates its arguments") {
  CHECK_THROWS_AS(tabulate(semilinear_dimension, 5.0, 1e-4), std::domain_error);
  CHECK_THROWS_AS(tabulate(semilinear_dimension, 60.0, 5e-3),
                  std::domain_error);
  CHECK_THROWS_AS(tabulate({0.3, 7}, 60.0, 1e-4), std::domain_error);
}

TEST_CASE("cache round-trips bit-exactly and honors header mismatches") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "sievebound_cache_test";
  fs::create_directories(dir);
  std::string path = (dir / "roundtrip.tab").string();

  sieve_function_table t = tabulate(linear_dimension, 12.0, 5e-4);
  write_table_cache(path, t);
  sieve_function_table back;
  REQUIRE(read_table_cache(path, back));
  CHECK(back.dimension.kappa == t.dimension.kappa);
  CHECK(back.dimension.beta == t.dimension.beta);
  CHECK(back.s_max == t.s_max);
  CHECK(back.step == t.step);
  REQUIRE(back.count() == t.count());
  for (std::size_t i = 0; i < t.count(); ++i) {
    if (std::isnan(t.F_values[i]))
      CHECK(std::isnan(back.F_values[i]));
    else
      CHECK(back.F_values[i] == t.F_values[i]);
    if (std::isnan(t.f_values[i]))
      CHECK(std::isnan(back.f_values[i]));
    else
      CHECK(back.f_values[i] == t.f_values[i]);
  }

  // matching request reuses the file; a different step rebuilds
  sieve_function_table reused = tabulate_cached(linear_dimension, 12.0, 5e-4, path);
  CHECK(reused.F_values.back() == t.F_values.back());
  sieve_function_table rebuilt = tabulate_cached(linear_dimension, 12.0, 2.5e-4, path);
  CHECK(rebuilt.step == 2.5e-4);
  sieve_function_table reread;
  REQUIRE(read_table_cache(path, reread));
  CHECK(reread.step == 2.5e-4);  // cache now holds the rebuilt table

  std::remove(path.c_str());
  CHECK_FALSE(read_table_cache(path, back));
}

TEST_CASE("euler gamma constant agrees with the standard library") {
  CHECK(euler_gamma == std::numbers::egamma);
}

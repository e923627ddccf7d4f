// Acceptance gate. Each numbered criterion prints exactly one PASS/FAIL
// line on stdout; the exit code is the number of failed criteria. All
// tolerances are pinned here, next to the checks that use them.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "sievebound/constants.hpp"
#include "sievebound/empirical.hpp"
#include "sievebound/factor_sieve.hpp"
#include "sievebound/integrals.hpp"
#include "sievebound/optimizer.hpp"
#include "sievebound/reference_values.hpp"
#include "sievebound/sieve_functions.hpp"
#include "sievebound/vector_combiner.hpp"

using namespace sievebound;

namespace {

int failures = 0;

class timer {
 public:
  timer() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

void report(int idx, const char* label, bool pass, const std::string& detail,
            double secs) {
  if (!pass) ++failures;
  std::printf("criterion %d (%s): %s — %s [%.1f s]\n", idx, label,
              pass ? "PASS" : "FAIL", detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

int worker_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

// ---- criterion 3 helpers ----------------------------------------------

// Independent delay-system continuations over the segments where every
// retarded read is served by a closed form; fine fixed-step Simpson.
double oracle_f1(double s) {  // [1, 3], marched in u = sqrt(t-1)
  double c0 = std::sqrt(exp_gamma / std::numbers::pi);
  double u_end = std::sqrt(s - 1.0);
  int n = 200000;
  double h = u_end / n, acc = 0.0;
  auto g = [&](double u) { return 2.0 * c0 / std::sqrt(1.0 + u * u); };
  for (int i = 0; i < n; ++i) {
    double u0 = i * h;
    acc += h / 6.0 * (g(u0) + 4.0 * g(u0 + 0.5 * h) + g(u0 + h));
  }
  return acc / std::sqrt(s);
}

double oracle_f2(double s) {  // [2, 4]
  int n = 200000;
  double h = (s - 2.0) / n, acc = 0.0;
  auto g = [&](double t) { return 2.0 * exp_gamma / (t - 1.0); };
  for (int i = 0; i < n; ++i) {
    double t0 = 2.0 + i * h;
    acc += h / 6.0 * (g(t0) + 4.0 * g(t0 + 0.5 * h) + g(t0 + h));
  }
  return acc / s;
}

double oracle_F1(double s) {  // (2, 3], reads the closed lower form
  int n = 100000;
  double h = (s - 2.0) / n, acc = 0.0;
  auto g = [&](double t) {
    return 0.5 / std::sqrt(t) * eval_f1_closed(t - 1.0);
  };
  for (int i = 0; i < n; ++i) {
    double t0 = 2.0 + i * h;
    acc += h / 6.0 * (g(t0) + 4.0 * g(t0 + 0.5 * h) + g(t0 + h));
  }
  return (std::sqrt(2.0) * eval_F1_closed(2.0) + acc) / std::sqrt(s);
}

double oracle_F2(double s) {  // (3, 4], reads the closed lower form
  int n = 100000;
  double h = (s - 3.0) / n, acc = 0.0;
  auto g = [&](double t) { return eval_f2_closed(t - 1.0); };
  for (int i = 0; i < n; ++i) {
    double t0 = 3.0 + i * h;
    acc += h / 6.0 * (g(t0) + 4.0 * g(t0 + 0.5 * h) + g(t0 + h));
  }
  return (3.0 * eval_F2_closed(3.0) + acc) / s;
}

// Derivative agreement where a closed form hands off to the march. The
// product g = s^kappa (F or f) has derivative kappa s^{kappa-1} r(s-1)
// with r the retarded read of the opposite function, so the one-sided
// derivatives at a joint differ exactly by the branch discontinuity of the
// read -- evaluable in closed form on both sides. Slope differencing at
// the grid scale cannot resolve this: past an upper joint g carries a
// (s-e)^{3/2} term whose first marched panel holds an O(h^{3/2}) value
// error, which any h-scale difference quotient amplifies to ~1e-4. The
// table's own conformance to the derivative field is therefore measured
// as increment-vs-integrated-field over seam-spanning windows.
double handoff_jump(const sieve_function_table& t, fn_kind k, double e,
                    double left_read, double right_read) {
  double kap = t.dimension.kappa;
  double jump =
      std::abs(kap * std::pow(e, kap - 1.0) * (left_read - right_read));
  auto read = [&](double u) {
    if (k == fn_kind::upper)  // upper reads the lower function
      return u <= t.f_domain_min + 1e-12 ? 0.0 : eval(t, fn_kind::lower, u);
    return eval(t, fn_kind::upper, u);
  };
  auto field = [&](double s) {
    return kap * std::pow(s, kap - 1.0) * read(s - 1.0);
  };
  auto g = [&](double s) { return std::pow(s, kap) * eval(t, k, s); };
  // Fine Simpson split at the joint (the field can have a sqrt kink there).
  auto quad = [&](double a, double b) {
    const int n = 2000;
    double h = (b - a) / n, acc = 0.0;
    for (int i = 0; i < n; ++i) {
      double s0 = a + i * h;
      acc += h / 6.0 * (field(s0) + 4.0 * field(s0 + 0.5 * h) +
                        field(s0 + h));
    }
    return acc;
  };
  for (double span : {16.0, 64.0, 256.0}) {
    double H = span * t.step;
    double dev = std::abs(g(e + H) - g(e - H) -
                          (quad(e - H, e) + quad(e, e + H))) /
                 (2.0 * H);
    jump = std::max(jump, dev);
  }
  return jump;
}

}  // namespace

int main() {
  std::fprintf(stderr, "building sieve function tables...\n");
  sieve_table_pair tables = tabulate_pair(60.0, 1e-4, "");
  objective_evaluator ev(tables);

  // ---- criterion 1: H reproduction ------------------------------------
  {
    timer tm;
    objective_report r = ev.eval_H({reference::opt_lambda, reference::opt_theta,
                                    reference::opt_theta1,
                                    reference::opt_theta2});
    bool h_ok = std::abs(r.H_value - reference::published_H) <= 0.002;
    bool omega_ok =
        std::abs(r.omega_bound - reference::published_omega) <= 1e-4;
    bool int_ok = r.omega_integer_bound == reference::published_omega_integer;
    report(1, "H reproduction", h_ok && omega_ok && int_ok,
           fmt("H = %.9g vs %.6g +/- 0.002; 1/lambda + 1/theta = %.9g vs "
               "%.6g +/- 1e-4; integer bound %ld vs %ld",
               r.H_value, reference::published_H, r.omega_bound,
               reference::published_omega, r.omega_integer_bound,
               static_cast<long>(reference::published_omega_integer)),
           tm.seconds());
  }

  // ---- criterion 2: G reproduction ------------------------------------
  {
    timer tm;
    auto g = ev.eval_G(reference::published_G_theta1,
                       reference::published_G_theta2);
    bool point_ok =
        g.has_value() && std::abs(*g - reference::published_G) <= 0.002;
    std::vector<g_search_row> rows;
    g_search_result s =
        ev.search_G(0.2501, 0.4999, 0.020, 0.024, 1e-4, worker_threads(),
                    &rows);
    bool search_ok = s.found && std::abs(s.theta2 - 0.0219) <= 5e-5;
    const g_search_row* best = nullptr;
    for (const auto& row : rows)
      if (row.any_feasible && (!best || row.best_G > best->best_G))
        best = &row;
    std::string search_note =
        s.found ? fmt("search found G = %.6g at theta2 = %.6g", s.value,
                      s.theta2)
                : fmt("search found no positive G (best %.6g at theta1 = "
                      "%.6g, theta2 = %.6g)",
                      best ? best->best_G : 0.0,
                      best ? best->best_theta1 : 0.0,
                      best ? best->theta2 : 0.0);
    report(2, "G reproduction", point_ok && search_ok,
           fmt("G = %.9g vs %.6g +/- 0.002; %s", g ? *g : 0.0,
               reference::published_G, search_note.c_str()),
           tm.seconds());
  }

  // ---- criterion 3: sieve function integrity --------------------------
  {
    timer tm;
    // (a) closed forms vs independent delay-system marches on the overlaps
    double overlap = 0.0;
    for (double s = 1.25; s <= 3.0 + 1e-12; s += 0.25)
      overlap = std::max(overlap, std::abs(oracle_f1(s) - eval_f1_closed(s)));
    for (double s = 2.25; s <= 4.0 + 1e-12; s += 0.25)
      overlap = std::max(overlap, std::abs(oracle_f2(s) - eval_f2_closed(s)));
    for (double s = 2.1; s <= 3.0 + 1e-12; s += 0.1)
      overlap = std::max(
          overlap,
          std::abs(oracle_F1(s) - eval(tables.semilinear, fn_kind::upper, s)));
    for (double s = 3.1; s <= 4.0 + 1e-12; s += 0.1)
      overlap = std::max(
          overlap,
          std::abs(oracle_F2(s) - eval(tables.linear, fn_kind::upper, s)));
    // the trivial delay branches: s^kappa F constant across the closed range
    for (double s = 0.5; s <= 2.0; s += 0.25)
      overlap = std::max(overlap,
                         std::abs(std::sqrt(s) * eval_F1_closed(s) -
                                  std::sqrt(2.0) * eval_F1_closed(2.0)));
    for (double s = 1.0; s <= 3.0; s += 0.25)
      overlap = std::max(
          overlap, std::abs(s * eval_F2_closed(s) - 2.0 * exp_gamma));
    bool overlap_ok = overlap < 1e-6;

    // (b) C1 handoff at the four closed-form ends. The branch reads at the
    // retarded point: an upper joint reads the lower function where its
    // zero branch meets the closed form; a lower joint reads the upper
    // function where the closed form meets the march's starting node.
    const auto& SL = tables.semilinear;
    const auto& LI = tables.linear;
    auto node = [](const sieve_function_table& t, double u) {
      return t.F_values[static_cast<std::size_t>(std::lround(u / t.step))];
    };
    double jump = std::max(
        {handoff_jump(SL, fn_kind::upper, 2.0, 0.0, eval_f1_closed(1.0)),
         handoff_jump(SL, fn_kind::lower, 3.0, eval_F1_closed(2.0),
                      node(SL, 2.0)),
         handoff_jump(LI, fn_kind::upper, 3.0, 0.0, eval_f2_closed(2.0)),
         handoff_jump(LI, fn_kind::lower, 4.0, eval_F2_closed(3.0),
                      node(LI, 3.0))});
    bool handoff_ok = jump < 1e-5;

    // (c) ordering: lower never exceeds upper. The tables carry ~5e-9 of
    // accumulated march error while the true far-tail gap underflows, so
    // the comparison allows 1e-8 — far below the 1e-6 resolution above.
    bool order_ok = true;
    for (const auto* t : {&tables.semilinear, &tables.linear}) {
      auto start =
          static_cast<std::size_t>(t->f_domain_min / t->step + 0.5);
      for (std::size_t i = start; i < t->count(); ++i)
        order_ok = order_ok && t->f_values[i] <= t->F_values[i] + 1e-8;
    }

    // (d) monotone: upper falls, lower rises (1e-10 per-step slack)
    bool mono_ok = true;
    auto mono = [&](const std::vector<double>& v, bool rising) {
      std::size_t s = 0;
      while (s < v.size() && std::isnan(v[s])) ++s;
      for (std::size_t i = s + 1; i < v.size(); ++i) {
        double d = v[i] - v[i - 1];
        if (rising ? d < -1e-10 : d > 1e-10) return false;
      }
      return true;
    };
    mono_ok = mono(tables.semilinear.F_values, false) &&
              mono(tables.semilinear.f_values, true) &&
              mono(tables.linear.F_values, false) &&
              mono(tables.linear.f_values, true);

    // (e) common limit at the far end
    double gap1 = std::abs(tables.semilinear.F_values.back() -
                           tables.semilinear.f_values.back());
    double gap2 =
        std::abs(tables.linear.F_values.back() - tables.linear.f_values.back());
    bool limit_ok = gap1 < 1e-6 && gap2 < 1e-6;

    report(3, "sieve function integrity",
           overlap_ok && handoff_ok && order_ok && mono_ok && limit_ok,
           fmt("overlap residual %.2e (<1e-6); handoff jump %.2e (<1e-5); "
               "ordering %s; monotone %s; end gaps %.2e / %.2e (<1e-6)",
               overlap, jump, order_ok ? "ok" : "violated",
               mono_ok ? "ok" : "violated", gap1, gap2),
           tm.seconds());
  }

  // ---- criterion 4: constants -----------------------------------------
  {
    timer tm;
    constants_report r6 = compute_constants(1000000);
    constants_report r7 = compute_constants(10000000);
    double dC = std::abs(r6.C - r7.C);
    double dc1 = std::abs(r6.c1 - r7.c1);
    double dc2 = std::abs(r6.c2 - r7.c2);
    double dc3 = std::abs(r6.c3 - r7.c3);
    bool stable_ok = dC <= 1e-7 && dc1 <= 1e-7 && dc2 <= 1e-7 && dc3 <= 1e-5;
    factor_sieve fs = build_factor_sieve(1000000);
    double s2 = s2_direct_sum(1000000, fs);
    double direct = s2 / std::sqrt(std::log(1e6));
    double rel = std::abs(direct - r7.c3) / r7.c3;
    bool s2_ok = rel <= 0.02;
    report(4, "constants", stable_ok && s2_ok,
           fmt("cutoff drift C %.3e, c1 %.3e, c2 %.3e (<=1e-7), c3 %.3e "
               "(<=1e-5); direct series estimate %.6g vs c3 %.6g, rel dev "
               "%.3g (<=0.02)",
               dC, dc1, dc2, dc3, direct, r7.c3, rel),
           tm.seconds());
  }

  // ---- criterion 5: combiner oracle -----------------------------------
  {
    timer tm;
    std::mt19937 rng(314159);
    std::uniform_real_distribution<double> d1(1.05, 4.0), d2(1.5, 80.0);
    int done = 0;
    double worst = 0.0;
    bool order_ok = true, agree_ok = true;
    while (done < 100) {
      double sigma1 = d1(rng), sigma2 = d2(rng);
      combiner_result up = F_combined(sigma1, sigma2, tables);
      combiner_result lo = f_combined(sigma1, sigma2, tables);
      if (!up.feasible || !lo.feasible) continue;  // want both defined
      ++done;
      // Same noise allowance as the table ordering check: the true gap can
      // underflow at deep budgets while the tables carry ~1e-9 march error.
      order_ok = order_ok && lo.value <= up.value + 1e-8;
      // dense scans across the same constraint line
      const int n = 1000000;
      double hi_u = sigma1 * (1.0 - 1.0 / sigma2), best_u = 1e300;
      for (int k = 1; k <= n; ++k) {
        double s1 = hi_u * k / n;
        double s2 = sigma2 * (1.0 - s1 / sigma1);
        if (s2 < 1.0) s2 = 1.0;
        double v = eval(tables.semilinear, fn_kind::upper, s1) *
                   eval(tables.linear, fn_kind::upper, s2);
        if (v < best_u) best_u = v;
      }
      double hi_l = sigma1 * (1.0 - 2.0 / sigma2), best_l = -1e300;
      if (hi_l <= 1.0) {
        best_l = lo.value;  // constraint set is (at most) the single point
      } else {
        for (int k = 0; k <= n; ++k) {
          double s1 = 1.0 + (hi_l - 1.0) * k / n;
          double s2 = sigma2 * (1.0 - s1 / sigma1);
          if (s2 < 2.0) s2 = 2.0;
          double F1 = eval(tables.semilinear, fn_kind::upper, s1);
          double F2 = eval(tables.linear, fn_kind::upper, s2);
          double f1 = eval(tables.semilinear, fn_kind::lower, s1);
          double f2 = eval(tables.linear, fn_kind::lower, s2);
          double v = f1 * F2 + f2 * F1 - F1 * F2;
          if (v > best_l) best_l = v;
        }
      }
      double dev =
          std::max(std::abs(up.value - best_u), std::abs(lo.value - best_l));
      worst = std::max(worst, dev);
      agree_ok = agree_ok && dev <= 1e-5;
    }
    report(5, "combiner oracle", agree_ok && order_ok,
           fmt("100 random budgets: worst dense-scan deviation %.2e "
               "(<=1e-5); lower <= upper %s",
               worst, order_ok ? "held" : "violated"),
           tm.seconds());
  }

  // ---- criterion 6: exact identities ----------------------------------
  {
    timer tm;
    factor_sieve fs = build_factor_sieve(1000002);
    struct tuple4 {
      double t1, t2, th, l;
    };
    const tuple4 tuples[] = {{0.449, 0.011, 0.23, 0.14},
                             {0.3, 0.05, 0.23, 0.14},
                             {0.431, 0.0219, 0.3, 0.2}};
    bool ok = true;
    std::string first_bad;
    for (std::uint64_t x : {10000ull, 100000ull, 1000000ull})
      for (const auto& tp : tuples) {
        sifted_sets s = build_sifted_sets(x, tp.t1, tp.t2, fs);
        buchstab_report b = buchstab_check(s, fs);
        weighted_chain_report w = weighted_chain_check(s, fs, tp.th, tp.l);
        if (b.residual != 0 || !w.all_hold) {
          ok = false;
          if (first_bad.empty())
            first_bad = fmt(" first failure at x=%llu theta1=%g",
                            static_cast<unsigned long long>(x), tp.t1);
        }
      }
    bool sw_ok = true;
    for (auto [t1, t2] : {std::pair{0.3, 0.05}, std::pair{0.45, 0.02}}) {
      sifted_sets s = build_sifted_sets(100000, t1, t2, fs);
      sw_ok = sw_ok && switching_structure_check(s, fs).pass;
    }
    report(6, "exact identities", ok && sw_ok,
           fmt("Buchstab residual and weighted chain over 9 (x, parameter) "
               "combinations %s;%s switching structure at 1e5 %s",
               ok ? "hold" : "fail", first_bad.c_str(),
               sw_ok ? "holds" : "fails"),
           tm.seconds());
  }

  // ---- criterion 7: census growth stability ---------------------------
  {
    timer tm;
    census_report c5 = census(100000, 11);
    census_report c6 = census(1000000, 11);
    census_report c7 = census(10000000, 11);
    census_report hand = census(10, 11);
    double lo = std::min({c5.normalized, c6.normalized, c7.normalized});
    double hi = std::max({c5.normalized, c6.normalized, c7.normalized});
    bool ok = lo > 0.0 && hi / lo < 2.0 && hand.count == 1;
    report(7, "census growth", ok,
           fmt("normalized counts %.4g / %.4g / %.4g at 1e5/1e6/1e7, ratio "
               "%.3f (<2); hand count at 10 = %llu (=1)",
               c5.normalized, c6.normalized, c7.normalized, hi / lo,
               static_cast<unsigned long long>(hand.count)),
           tm.seconds());
  }

  // ---- criterion 8: two-squares exactness -----------------------------
  {
    timer tm;
    long mismatches = 0;
    for (std::uint64_t n = 1; n <= 100000; ++n) {
      bool brute = false;
      for (std::uint64_t a = 1; a * a < n && !brute; ++a) {
        std::uint64_t rest = n - a * a;
        auto b = static_cast<std::uint64_t>(
            std::sqrt(static_cast<double>(rest)));
        for (std::uint64_t c = b > 1 ? b - 1 : 1; c <= b + 1; ++c)
          if (c * c == rest) {
            brute = true;
            break;
          }
      }
      if (is_sum_two_pos_squares(n) != brute) ++mismatches;
    }
    report(8, "two-squares exactness", mismatches == 0,
           fmt("%ld mismatches against brute force over n <= 1e5",
               mismatches),
           tm.seconds());
  }

  std::fprintf(stderr, "%d of 8 criteria failed\n", failures);
  return failures;
}

#pragma once
// Objective assembly and parameter search for the bound on Omega(p+2).
//
// With P = C e^{-3 gamma/2}/4 and S = 2 c1 c2^2 c3:
//   G(t1, t2) = P f((2 t1)^-1, (2 t2)^-1) / (sqrt(t1) t2)
//               - S C(t1) / (t2 min(t1, 1/2 - t2))
//   H(l, t, t1, t2) = G(t1, t2) - l P I(t, t1, t2) / (sqrt(t1) t2)
// f is the combined lower sieve function, C(t1) the switching integral,
// I the weighted-sieve integral. H > 0 certifies the bound
// Omega(p+2) <= largest integer below 1/l + 1/t.
//
// search_G walks theta2 downward and reports the first (largest) theta2
// whose theta1-row contains a positive G. search_H runs a coarse 4-D grid
// (the weighted term evaluated by a cumulative panel sweep shared across
// the theta axis), confirms leading candidates against the exact integral,
// then locally refines with halving steps. Both are deterministic for a
// fixed grid_spec, independent of thread count.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "sievebound/integrals.hpp"
#include "sievebound/reference_values.hpp"
#include "sievebound/vector_combiner.hpp"

namespace sievebound {

struct search_params {
  double lambda = 0.0, theta = 0.0, theta1 = 0.0, theta2 = 0.0;
};

struct objective_report {
  search_params params{};
  double term_main = 0.0, term_switching = 0.0, term_weighted = 0.0;
  double H_value = 0.0;
  double omega_bound = 0.0;
  long omega_integer_bound = 0;
};

inline long largest_integer_below(double x) {
  double f = std::floor(x);
  return static_cast<long>(f == x ? f - 1.0 : f);
}

struct g_search_row {
  double theta2 = 0.0, best_theta1 = 0.0, best_G = 0.0;
  bool any_feasible = false;
};

struct g_search_result {
  bool found = false;
  double theta1 = 0.0, theta2 = 0.0, value = 0.0;
};

struct h_grid_spec {
  double lambda_lo = 0.05, lambda_hi = 0.5, lambda_step = 0.01;    // inclusive
  double theta_lo = 0.05, theta_hi = 0.45, theta_step = 0.01;      // inclusive
  double theta1_lo = 0.25, theta1_hi = 0.5, theta1_step = 0.001;   // exclusive
  double theta2_lo = 0.001, theta2_hi = 0.05, theta2_step = 0.001; // exclusive
  int refine_rounds = 3;
};

struct h_search_result {
  bool found = false;
  objective_report best{};
};

class objective_evaluator {
 public:
  explicit objective_evaluator(const sieve_table_pair& tables,
                               double C = reference::C_main,
                               double c1 = reference::c1,
                               double c2 = reference::c2,
                               double c3 = reference::c3)
      : tables_(tables),
        prefactor_(C * std::exp(-1.5 * euler_gamma) / 4.0),
        switching_scale_(2.0 * c1 * c2 * c2 * c3) {}

  double prefactor() const { return prefactor_; }
  double switching_scale() const { return switching_scale_; }

  // C(theta1), memoized on the exact bit pattern of theta1.
  double switching_integral(double theta1) {
    auto key = std::bit_cast<std::uint64_t>(theta1);
    auto it = C_cache_.find(key);
    if (it != C_cache_.end()) return it->second;
    double v = integral_C(theta1).value;
    C_cache_.emplace(key, v);
    return v;
  }

  // Exact I(theta, theta1, theta2), memoized.
  double weighted_integral(double theta, double theta1, double theta2) {
    std::array<std::uint64_t, 3> key = {std::bit_cast<std::uint64_t>(theta),
                                        std::bit_cast<std::uint64_t>(theta1),
                                        std::bit_cast<std::uint64_t>(theta2)};
    auto it = I_cache_.find(key);
    if (it != I_cache_.end()) return it->second;
    double v = integral_I(theta, theta1, theta2, tables_).value;
    I_cache_.emplace(key, v);
    return v;
  }

  // First two terms of H. Infeasible lower-bound combination rejects the
  // point (nullopt) rather than producing a value.
  std::optional<double> eval_G(double theta1, double theta2) {
    validate_g_params(theta1, theta2);
    combiner_result fc =
        f_combined(1.0 / (2.0 * theta1), 1.0 / (2.0 * theta2), tables_);
    if (!fc.feasible) return std::nullopt;
    double tm = prefactor_ * fc.value / (std::sqrt(theta1) * theta2);
    double ts = switching_scale_ * switching_integral(theta1) /
                (theta2 * std::min(theta1, 0.5 - theta2));
    return tm - ts;
  }

  objective_report eval_H(const search_params& p) {
    validate_h_params(p);
    combiner_result fc =
        f_combined(1.0 / (2.0 * p.theta1), 1.0 / (2.0 * p.theta2), tables_);
    if (!fc.feasible)
      throw std::domain_error(
          "eval_H: main term infeasible (lower-bound combination needs "
          "2 theta1 + 4 theta2 <= 1)");
    objective_report r;
    r.params = p;
    r.term_main = prefactor_ * fc.value / (std::sqrt(p.theta1) * p.theta2);
    r.term_switching = switching_scale_ * switching_integral(p.theta1) /
                       (p.theta2 * std::min(p.theta1, 0.5 - p.theta2));
    r.term_weighted = p.lambda * prefactor_ *
                      weighted_integral(p.theta, p.theta1, p.theta2) /
                      (std::sqrt(p.theta1) * p.theta2);
    r.H_value = r.term_main - r.term_switching - r.term_weighted;
    r.omega_bound = 1.0 / p.lambda + 1.0 / p.theta;
    r.omega_integer_bound = largest_integer_below(r.omega_bound);
    return r;
  }

  // Scans theta2 downward over multiples of step inside [t2_lo, t2_hi];
  // per row, theta1 runs over multiples of step in [t1_lo, t1_hi]
  // intersected with (1/4, 1/2). Returns the first row whose best G is
  // positive. Row results are appended to *rows when given.
  g_search_result search_G(double t1_lo, double t1_hi, double t2_lo,
                           double t2_hi, double step, int threads = 1,
                           std::vector<g_search_row>* rows = nullptr) {
    if (!(step > 0.0)) throw std::domain_error("search_G: need step > 0");
    auto k2_hi = static_cast<long>(std::floor(t2_hi / step + 1e-9));
    auto k2_lo = static_cast<long>(std::ceil(t2_lo / step - 1e-9));
    auto k1_hi = static_cast<long>(std::floor(t1_hi / step + 1e-9));
    auto k1_lo = static_cast<long>(std::ceil(t1_lo / step - 1e-9));
    std::vector<long> k1s;
    for (long k = k1_lo; k <= k1_hi; ++k) {
      double t1 = static_cast<double>(k) * step;
      if (t1 > 0.25 && t1 < 0.5) k1s.push_back(k);
    }
    if (k2_hi < k2_lo || k1s.empty())
      throw std::domain_error("search_G: empty scan range");
    // Pre-warm the C(theta1) cache so the parallel row scans only read it.
    for (long k : k1s) switching_integral(static_cast<double>(k) * step);

    g_search_result res;
    for (long k2 = k2_hi; k2 >= k2_lo; --k2) {
      double t2 = static_cast<double>(k2) * step;
      if (!(t2 > 0.0)) break;
      g_search_row row = scan_theta1_row(k1s, step, t2, threads);
      row.theta2 = t2;
      if (rows) rows->push_back(row);
      if (row.any_feasible && row.best_G > 0.0) {
        res.found = true;
        res.theta1 = row.best_theta1;
        res.theta2 = t2;
        res.value = row.best_G;
        return res;
      }
    }
    return res;
  }

  h_search_result search_H(const h_grid_spec& g, int threads = 1) {
    std::vector<double> thetas;
    for (long j = 0;; ++j) {
      double t = g.theta_lo + static_cast<double>(j) * g.theta_step;
      if (t > g.theta_hi + 1e-12) break;
      if (t < 0.5) thetas.push_back(t);
    }
    std::vector<double> lambdas;
    for (long j = 0;; ++j) {
      double l = g.lambda_lo + static_cast<double>(j) * g.lambda_step;
      if (l > g.lambda_hi + 1e-12) break;
      if (l > 0.0) lambdas.push_back(l);
    }
    std::vector<double> t1s = interior_grid(g.theta1_lo, g.theta1_hi,
                                            g.theta1_step, 0.25, 0.5);
    std::vector<double> t2s = interior_grid(g.theta2_lo, g.theta2_hi,
                                            g.theta2_step, 0.0, 0.5);
    if (thetas.empty() || lambdas.empty() || t1s.empty() || t2s.empty())
      throw std::domain_error("search_H: empty grid");
    // Pre-warm the C(theta1) cache so the parallel stage only reads it.
    for (double t1 : t1s) switching_integral(t1);

    // Coarse stage: for every (theta1, theta2) with positive G, sweep the
    // theta axis cumulatively and pick per theta the largest lambda still
    // giving H > 0. Candidate columns are ranked by omega.
    struct candidate {
      double omega, lambda, theta, theta1, theta2, G;
      bool operator<(const candidate& o) const {
        if (omega != o.omega) return omega < o.omega;
        return std::array{lambda, theta, theta1, theta2} <
               std::array{o.lambda, o.theta, o.theta1, o.theta2};
      }
    };
    std::vector<candidate> top;
    auto offer = [&](const candidate& c) {
      top.push_back(c);
      std::sort(top.begin(), top.end());
      if (top.size() > 32) top.resize(32);
    };

    std::vector<std::pair<double, double>> pairs;
    for (double t2 : t2s)
      for (double t1 : t1s)
        if (t1 > t2) pairs.push_back({t1, t2});
    std::vector<std::vector<candidate>> per_pair(pairs.size());
    parallel_for(pairs.size(), threads, [&](std::size_t i) {
      double t1 = pairs[i].first, t2 = pairs[i].second;
      auto G = eval_G(t1, t2);
      if (!G || *G <= 0.0) return;
      std::vector<double> I = sweep_weighted_integrals(t1, t2, thetas);
      double scale = prefactor_ / (std::sqrt(t1) * t2);
      for (std::size_t j = 0; j < thetas.size(); ++j) {
        if (!(thetas[j] > t2)) continue;
        double W = scale * I[j];
        if (!(W > 0.0)) continue;
        // largest grid lambda with G - lambda W > 0
        for (auto it = lambdas.rbegin(); it != lambdas.rend(); ++it) {
          if (*G - *it * W > 0.0) {
            per_pair[i].push_back({1.0 / *it + 1.0 / thetas[j], *it, thetas[j],
                                   t1, t2, *G});
            break;
          }
        }
      }
    });
    for (auto& v : per_pair)
      for (auto& c : v) offer(c);

    h_search_result out;
    // Confirmation: re-derive lambda against the exact weighted integral.
    for (const candidate& c : top) {
      double W = prefactor_ * weighted_integral(c.theta, c.theta1, c.theta2) /
                 (std::sqrt(c.theta1) * c.theta2);
      for (auto it = lambdas.rbegin(); it != lambdas.rend(); ++it) {
        if (c.G - *it * W > 0.0) {
          search_params p{*it, c.theta, c.theta1, c.theta2};
          objective_report r = eval_H(p);
          if (r.H_value > 0.0 && (!out.found || report_better(r, out.best))) {
            out.found = true;
            out.best = r;
          }
          break;
        }
      }
    }
    if (!out.found) return out;

    // Local refinement with halving steps, exact evaluations only.
    double sl = g.lambda_step, st = g.theta_step, s1 = g.theta1_step,
           s2 = g.theta2_step;
    for (int round = 0; round < g.refine_rounds; ++round) {
      sl *= 0.5;
      st *= 0.5;
      s1 *= 0.5;
      s2 *= 0.5;
      search_params base = out.best.params;
      for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
          for (int c = -2; c <= 2; ++c)
            for (int d = -2; d <= 2; ++d) {
              search_params p{base.lambda + a * sl, base.theta + b * st,
                              base.theta1 + c * s1, base.theta2 + d * s2};
              auto r = try_eval_H(p);
              if (r && r->H_value > 0.0 && report_better(*r, out.best))
                out.best = *r;
            }
    }
    return out;
  }

  std::optional<objective_report> try_eval_H(const search_params& p) {
    try {
      return eval_H(p);
    } catch (const std::domain_error&) {
      return std::nullopt;
    }
  }

 private:
  static void validate_g_params(double theta1, double theta2) {
    if (!(theta2 > 0.0 && theta2 < theta1))
      throw std::domain_error("eval_G: need 0 < theta2 < theta1");
    if (!(theta1 > 0.25 && theta1 < 0.5))
      throw std::domain_error("eval_G: need 1/4 < theta1 < 1/2");
  }

  static void validate_h_params(const search_params& p) {
    if (!(p.lambda > 0.0)) throw std::domain_error("eval_H: need lambda > 0");
    validate_g_params(p.theta1, p.theta2);
    if (!(p.theta2 < p.theta && p.theta < 0.5))
      throw std::domain_error("eval_H: need theta2 < theta < 1/2");
  }

  // Lexicographic objective: smaller omega wins; ties resolve to the
  // smallest parameter vector so results are thread-count-invariant.
  static bool report_better(const objective_report& a,
                            const objective_report& b) {
    if (a.omega_bound != b.omega_bound) return a.omega_bound < b.omega_bound;
    return std::array{a.params.lambda, a.params.theta, a.params.theta1,
                      a.params.theta2} <
           std::array{b.params.lambda, b.params.theta, b.params.theta1,
                      b.params.theta2};
  }

  static std::vector<double> interior_grid(double lo, double hi, double step,
                                           double hard_lo, double hard_hi) {
    std::vector<double> out;
    auto k_lo = static_cast<long>(std::floor(lo / step)) ;
    auto k_hi = static_cast<long>(std::ceil(hi / step));
    for (long k = k_lo; k <= k_hi; ++k) {
      double v = static_cast<double>(k) * step;
      if (v > lo + 1e-12 && v < hi - 1e-12 && v > hard_lo && v < hard_hi)
        out.push_back(v);
    }
    return out;
  }

  template <class Fn>
  static void parallel_for(std::size_t n, int threads, Fn&& fn) {
    if (threads <= 1 || n < 2) {
      for (std::size_t i = 0; i < n; ++i) fn(i);
      return;
    }
    std::size_t nt = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    std::size_t chunk = (n + nt - 1) / nt;
    for (std::size_t t = 0; t < nt; ++t) {
      std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
      pool.emplace_back([&, lo, hi] {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  g_search_row scan_theta1_row(const std::vector<long>& k1s, double step,
                               double t2, int threads) {
    std::vector<double> gs(k1s.size(),
                           -std::numeric_limits<double>::infinity());
    parallel_for(k1s.size(), threads, [&](std::size_t i) {
      double t1 = static_cast<double>(k1s[i]) * step;
      if (!(t2 < t1)) return;
      auto v = eval_G(t1, t2);
      if (v) gs[i] = *v;
    });
    g_search_row row;
    for (std::size_t i = 0; i < k1s.size(); ++i) {
      if (std::isinf(gs[i])) continue;
      if (!row.any_feasible || gs[i] > row.best_G) {
        row.any_feasible = true;
        row.best_G = gs[i];
        row.best_theta1 = static_cast<double>(k1s[i]) * step;
      }
    }
    return row;
  }

  // Cumulative I(theta_j, t1, t2) for every theta_j at once: composite
  // Simpson in log alpha between consecutive grid abscissae (the integrand
  // carries a 1/alpha factor, so the log variable equidistributes error).
  // Accuracy ~1e-6 serves ranking; candidates are confirmed exactly.
  std::vector<double> sweep_weighted_integrals(double t1, double t2,
                                               const std::vector<double>& thetas) {
    auto Fc = [&](double a) {
      combiner_result F = F_combined((1.0 - 2.0 * a) / (2.0 * t1),
                                     (1.0 - 2.0 * a) / (2.0 * t2), tables_);
      if (!F.feasible)
        throw std::domain_error(
            "search_H sweep: combined upper function infeasible at alpha = " +
            std::to_string(a));
      return F.value;
    };
    std::vector<double> I0(thetas.size()), I1(thetas.size());
    double a_prev = t2, i0 = 0.0, i1 = 0.0, f_prev = Fc(a_prev);
    for (std::size_t j = 0; j < thetas.size(); ++j) {
      double a_next = thetas[j];
      if (!(a_next > a_prev)) {
        I0[j] = i0;
        I1[j] = i1;
        continue;
      }
      double t_lo = std::log(a_prev), t_hi = std::log(a_next);
      int nsub = std::max(2, static_cast<int>(std::ceil((t_hi - t_lo) / 0.1)));
      double ht = (t_hi - t_lo) / nsub;
      double fa = f_prev, aa = a_prev;
      for (int s = 0; s < nsub; ++s) {
        double ta = t_lo + s * ht, tb = ta + ht, tm = ta + 0.5 * ht;
        double ab = std::exp(tb), am = std::exp(tm);
        double fm = Fc(am), fb = Fc(ab);
        // d I0 = Fc dt;  d I1 = Fc alpha dt
        i0 += ht / 6.0 * (fa + 4.0 * fm + fb);
        i1 += ht / 6.0 * (fa * aa + 4.0 * fm * am + fb * ab);
        fa = fb;
        aa = ab;
      }
      f_prev = fa;
      a_prev = a_next;
      I0[j] = i0;
      I1[j] = i1;
    }
    std::vector<double> I(thetas.size());
    for (std::size_t j = 0; j < thetas.size(); ++j)
      I[j] = I0[j] - I1[j] / thetas[j];
    return I;
  }

  const sieve_table_pair& tables_;
  double prefactor_, switching_scale_;
  std::map<std::uint64_t, double> C_cache_;
  std::map<std::array<std::uint64_t, 3>, double> I_cache_;
};

}  // namespace sievebound

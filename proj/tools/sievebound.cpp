// Command-line front end. Subcommands cover tabulation, the Euler-product
// constants, the two objective integrals, the two-dimension combiner, the
// G/H parameter searches, exact desk-scale identity verification, the
// prime census, and a combined report.
//
// Exit codes: 0 success, 1 check failure, 2 usage or precondition error.
// All machine output (JSON, CSV) goes to stdout with floating-point values
// printed to 10 significant digits; identical inputs and cache state give
// byte-identical output. Timing goes to stderr only.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "sievebound/constants.hpp"
#include "sievebound/empirical.hpp"
#include "sievebound/factor_sieve.hpp"
#include "sievebound/integrals.hpp"
#include "sievebound/optimizer.hpp"
#include "sievebound/reference_values.hpp"
#include "sievebound/sieve_functions.hpp"
#include "sievebound/vector_combiner.hpp"

namespace {

using namespace sievebound;

// ---- deterministic JSON ------------------------------------------------

std::string jnum(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string jnum(long long v) { return std::to_string(v); }
std::string jnum(unsigned long long v) { return std::to_string(v); }

std::string jstr(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char esc[8];
          std::snprintf(esc, sizeof esc, "\\u%04x", c);
          out += esc;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

// Order-preserving object builder; values arrive already serialized.
class jobj {
 public:
  jobj& raw(const std::string& key, const std::string& value) {
    body_ += first_ ? "" : ",";
    first_ = false;
    body_ += jstr(key) + ":" + value;
    return *this;
  }
  jobj& add(const std::string& key, double v) { return raw(key, jnum(v)); }
  jobj& add(const std::string& key, bool v) {
    return raw(key, v ? "true" : "false");
  }
  jobj& add(const std::string& key, long long v) { return raw(key, jnum(v)); }
  jobj& add(const std::string& key, long v) {
    return raw(key, jnum(static_cast<long long>(v)));
  }
  jobj& add(const std::string& key, int v) {
    return raw(key, jnum(static_cast<long long>(v)));
  }
  jobj& add(const std::string& key, unsigned long long v) {
    return raw(key, jnum(v));
  }
  jobj& add(const std::string& key, unsigned long v) {
    return raw(key, jnum(static_cast<unsigned long long>(v)));
  }
  jobj& add(const std::string& key, unsigned v) {
    return raw(key, jnum(static_cast<unsigned long long>(v)));
  }
  jobj& str(const std::string& key, const std::string& v) {
    return raw(key, jstr(v));
  }
  std::string done() const { return "{" + body_ + "}"; }

 private:
  std::string body_;
  bool first_ = true;
};

std::string jarr(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += items[i];
  }
  return out + "]";
}

void print_json(const std::string& body) {
  std::fputs(body.c_str(), stdout);
  std::fputc('\n', stdout);
}

// ---- config file: line-oriented `key = value`, `#` comments ------------

std::vector<std::string> expand_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("config: cannot open " + path);
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    auto a = s.find_first_not_of(" \t\r");
    auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: " + path + ":" +
                                  std::to_string(lineno) +
                                  ": expected `key = value`");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config: " + path + ":" +
                                  std::to_string(lineno) + ": empty key");
    tokens.push_back(val.empty() ? "--" + key : "--" + key + "=" + val);
  }
  return tokens;
}

// ---- shared option plumbing --------------------------------------------

struct table_options {
  double s_max = 60.0;
  double step = 1e-4;
  std::string cache_dir;  // empty: consult SIEVEBOUND_CACHE_DIR
};

void add_table_options(CLI::App* cmd, table_options& t) {
  cmd->add_option("--s-max", t.s_max, "Tabulation endpoint (default 60)");
  cmd->add_option("--step", t.step, "Tabulation grid step (default 1e-4)");
  cmd->add_option("--cache-dir", t.cache_dir,
                  "Table cache directory (default $SIEVEBOUND_CACHE_DIR)");
}

struct constant_options {
  std::uint64_t cutoff = 0;  // 0: built-in reference values
};

void add_constant_options(CLI::App* cmd, constant_options& c) {
  cmd->add_option("--constants-cutoff", c.cutoff,
                  "Recompute the Euler products to this cutoff instead of "
                  "using the built-in reference values");
}

struct resolved_constants {
  double C, c1, c2, c3;
  std::uint64_t cutoff;
  bool computed;
};

resolved_constants resolve_constants(const constant_options& o) {
  if (o.cutoff == 0)
    return {reference::C_main, reference::c1, reference::c2, reference::c3,
            reference::constants_cutoff, false};
  constants_report r = compute_constants(o.cutoff);
  return {r.C, r.c1, r.c2, r.c3, o.cutoff, true};
}

int default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

// ---- subcommands -------------------------------------------------------

int cmd_tabulate(const table_options& topt, bool force) {
  std::string dir = topt.cache_dir;
  if (dir.empty()) {
    const char* env = std::getenv("SIEVEBOUND_CACHE_DIR");
    if (env) dir = env;
  }
  if (force && !dir.empty()) {
    for (const char* tag : {"semilinear", "linear"}) {
      char buf[256];
      std::snprintf(buf, sizeof buf, "%s/sieve_%s_s%g_h%g.tab", dir.c_str(),
                    tag, topt.s_max, topt.step);
      std::remove(buf);
    }
  }
  sieve_table_pair tables = tabulate_pair(topt.s_max, topt.step, dir);
  auto table_json = [](const sieve_function_table& t) {
    return jobj()
        .add("kappa", t.dimension.kappa)
        .add("beta", t.dimension.beta)
        .add("s_max", t.s_max)
        .add("step", t.step)
        .add("count", t.count())
        .add("upper_at_s_max", t.F_values.back())
        .add("lower_at_s_max", t.f_values.back())
        .add("gap_at_s_max", t.F_values.back() - t.f_values.back())
        .done();
  };
  print_json(jobj()
                 .str("cache_dir", dir)
                 .raw("semilinear", table_json(tables.semilinear))
                 .raw("linear", table_json(tables.linear))
                 .done());
  return 0;
}

int cmd_constants(std::uint64_t cutoff, bool with_variant_C, bool with_raw_c3) {
  constants_report r = compute_constants(cutoff);
  jobj o;
  o.add("cutoff", r.cutoff)
      .add("C", r.C)
      .add("c1", r.c1)
      .add("c2", r.c2)
      .add("c3", r.c3)
      .add("tail_error", r.tail_error);
  if (with_variant_C) o.add("C_variant", compute_C(cutoff, true));
  if (with_raw_c3) o.add("c3_raw", compute_c3(cutoff, false));
  print_json(o.done());
  return 0;
}

int cmd_integral(const std::string& kind, double theta, double theta1,
                 double theta2, const table_options& topt) {
  quadrature_result q;
  jobj o;
  o.str("kind", kind);
  if (kind == "C") {
    q = integral_C(theta1);
    o.add("theta1", theta1);
  } else {
    sieve_table_pair tables = tabulate_pair(topt.s_max, topt.step,
                                            topt.cache_dir);
    q = integral_I(theta, theta1, theta2, tables);
    o.add("theta", theta).add("theta1", theta1).add("theta2", theta2);
  }
  o.add("value", q.value)
      .add("abs_error_estimate", q.abs_error_estimate)
      .add("evaluations", static_cast<long long>(q.evaluations))
      .add("converged", q.converged);
  print_json(o.done());
  return 0;
}

std::string combiner_json(const combiner_result& r) {
  return jobj()
      .add("feasible", r.feasible)
      .add("value", r.value)
      .add("s1", r.s1)
      .add("s2", r.s2)
      .done();
}

int cmd_combine(double sigma1, double sigma2, const table_options& topt) {
  sieve_table_pair tables = tabulate_pair(topt.s_max, topt.step,
                                          topt.cache_dir);
  combiner_result up = F_combined(sigma1, sigma2, tables);
  combiner_result lo = f_combined(sigma1, sigma2, tables);
  print_json(jobj()
                 .add("sigma1", sigma1)
                 .add("sigma2", sigma2)
                 .raw("upper", combiner_json(up))
                 .raw("lower", combiner_json(lo))
                 .done());
  return 0;
}

int cmd_optimize_G(objective_evaluator& ev, double t1_lo, double t1_hi,
                   double t2_lo, double t2_hi, double step, int threads) {
  std::vector<g_search_row> rows;
  g_search_result res =
      ev.search_G(t1_lo, t1_hi, t2_lo, t2_hi, step, threads, &rows);
  jobj o;
  o.str("mode", "G")
      .add("found", res.found)
      .add("rows_scanned", rows.size());
  if (res.found) {
    o.add("theta1", res.theta1).add("theta2", res.theta2).add("value",
                                                              res.value);
  } else if (!rows.empty()) {
    const g_search_row* best = nullptr;
    for (const auto& r : rows)
      if (r.any_feasible && (!best || r.best_G > best->best_G)) best = &r;
    if (best) {
      o.add("best_theta1", best->best_theta1)
          .add("best_theta2", best->theta2)
          .add("best_value", best->best_G);
    }
  }
  print_json(o.done());
  return 0;
}

int cmd_optimize_H(objective_evaluator& ev, const h_grid_spec& grid,
                   int threads) {
  h_search_result res = ev.search_H(grid, threads);
  jobj o;
  o.str("mode", "H").add("found", res.found);
  if (res.found) {
    const objective_report& b = res.best;
    o.add("lambda", b.params.lambda)
        .add("theta", b.params.theta)
        .add("theta1", b.params.theta1)
        .add("theta2", b.params.theta2)
        .add("H", b.H_value)
        .add("term_main", b.term_main)
        .add("term_switching", b.term_switching)
        .add("term_weighted", b.term_weighted)
        .add("omega_bound", b.omega_bound)
        .add("omega_integer_bound", b.omega_integer_bound);
  }
  print_json(o.done());
  return 0;
}

std::string buchstab_json(const buchstab_report& r) {
  return jobj()
      .add("lhs", r.lhs)
      .add("start", r.start)
      .add("removed", r.removed)
      .add("residual", r.residual)
      .add("pass", r.residual == 0)
      .done();
}

std::string weighted_chain_json(const weighted_chain_report& r) {
  return jobj()
      .add("restricted_sum", r.restricted_sum)
      .add("full_sum", r.full_sum)
      .add("omega_minus_logs", r.omega_minus_logs)
      .add("omega_minus_theta", r.omega_minus_theta)
      .add("B_size", r.B_size)
      .add("sifted_size", r.sifted_size)
      .add("lambda_side", r.lambda_side)
      .add("bound_side", r.bound_side)
      .add("small_omega_count", r.small_omega_count)
      .add("final_bound", r.final_bound)
      .add("squarefree_small_omega", r.squarefree_small_omega)
      .add("nonsquarefree_small_omega", r.nonsquarefree_small_omega)
      .add("weight_extension_ok", r.weight_extension_ok)
      .add("weight_identity_ok", r.weight_identity_ok)
      .add("log_bound_ok", r.log_bound_ok)
      .add("sift_identity_ok", r.sift_identity_ok)
      .add("lambda_bound_ok", r.lambda_bound_ok)
      .add("count_bound_ok", r.count_bound_ok)
      .add("squarefree_subset_ok", r.squarefree_subset_ok)
      .add("pass", r.all_hold)
      .done();
}

std::string switching_json(const switching_report& r) {
  std::vector<std::string> ex1, ex2;
  for (auto n : r.examples_p2_over)
    ex1.push_back(jnum(static_cast<unsigned long long>(n)));
  for (auto n : r.examples_p1_eq)
    ex2.push_back(jnum(static_cast<unsigned long long>(n)));
  return jobj()
      .add("checked", r.checked)
      .add("shape_violations", r.shape_violations)
      .add("m_bound_violations", r.m_bound_violations)
      .add("p1_bound_violations", r.p1_bound_violations)
      .add("p2_over_sqrt_x", r.p2_over_sqrt_x)
      .add("p1_equal_p2", r.p1_equal_p2)
      .raw("examples_p2_over_sqrt_x", jarr(ex1))
      .raw("examples_p1_equal_p2", jarr(ex2))
      .add("pass", r.pass)
      .done();
}

int cmd_verify(std::uint64_t x, double theta1, double theta2, double theta,
               double lambda, bool with_chain) {
  factor_sieve fs = build_factor_sieve(x < 2 ? 2 : x);
  sifted_sets sets = build_sifted_sets(x, theta1, theta2, fs);
  buchstab_report bu = buchstab_check(sets, fs);
  bool pass = bu.residual == 0;

  jobj o;
  o.add("x", x)
      .add("theta1", theta1)
      .add("theta2", theta2)
      .raw("set_sizes", jobj()
                            .add("A", sets.A.size())
                            .add("A0", sets.A0.size())
                            .add("B", sets.B.size())
                            .done())
      .raw("buchstab", buchstab_json(bu));
  if (with_chain) {
    weighted_chain_report wc = weighted_chain_check(sets, fs, theta, lambda);
    pass = pass && wc.all_hold;
    o.add("theta", theta).add("lambda", lambda).raw("weighted_chain",
                                                    weighted_chain_json(wc));
  }
  if (theta1 > 0.25) {
    switching_report sw = switching_structure_check(sets, fs);
    pass = pass && sw.pass;
    o.raw("switching", switching_json(sw));
  }
  o.add("pass", pass);
  print_json(o.done());
  return pass ? 0 : 1;
}

int cmd_census(std::uint64_t x, int k, bool csv, bool big) {
  if (x > 100000000ull && !big)
    throw std::domain_error(
        "census: x over the desk-scale cap; pass --big for the streaming "
        "path (up to 2e9)");
  if (csv) {
    std::fputs("x,k,count,normalized\n", stdout);
    std::vector<std::uint64_t> checkpoints;
    for (std::uint64_t c = 10; c < x; c *= 10) checkpoints.push_back(c);
    checkpoints.push_back(x);
    for (std::uint64_t c : checkpoints) {
      census_report r = census(c, k);
      std::fprintf(stdout, "%llu,%d,%llu,%s\n",
                   static_cast<unsigned long long>(r.x), r.k,
                   static_cast<unsigned long long>(r.count),
                   jnum(r.normalized).c_str());
    }
    return 0;
  }
  census_report r = census(x, k);
  print_json(jobj()
                 .add("x", r.x)
                 .add("k", r.k)
                 .add("count", r.count)
                 .add("normalized", r.normalized)
                 .done());
  return 0;
}

// ---- report ------------------------------------------------------------

struct repro_line {
  std::string label;
  double computed, published, tolerance;
  bool pass;
};

struct md_row {
  std::string quantity, value;
};

std::string md_table(const std::vector<md_row>& rows) {
  std::string out = "| quantity | value |\n|---|---|\n";
  for (const auto& r : rows) out += "| " + r.quantity + " | " + r.value + " |\n";
  return out;
}

int cmd_report(const table_options& topt, const constant_options& copt,
               bool paper_repro, const std::string& out_dir) {
  sieve_table_pair tables = tabulate_pair(topt.s_max, topt.step,
                                          topt.cache_dir);
  resolved_constants cons = resolve_constants(copt);
  objective_evaluator ev(tables, cons.C, cons.c1, cons.c2, cons.c3);

  const double l = reference::opt_lambda, th = reference::opt_theta;
  const double t1 = reference::opt_theta1, t2 = reference::opt_theta2;
  const double g1 = reference::published_G_theta1;
  const double g2 = reference::published_G_theta2;

  objective_report H = ev.eval_H({l, th, t1, t2});
  auto G = ev.eval_G(g1, g2);
  if (!G)
    throw std::runtime_error("report: G point infeasible");
  quadrature_result qC = integral_C(t1);
  quadrature_result qI = integral_I(th, t1, t2, tables);
  combiner_result fH = f_combined(1.0 / (2.0 * t1), 1.0 / (2.0 * t2), tables);
  combiner_result fG = f_combined(1.0 / (2.0 * g1), 1.0 / (2.0 * g2), tables);

  auto spot = [&](const sieve_function_table& t, fn_kind k, double s) {
    return eval(t, k, s);
  };
  const auto& SL = tables.semilinear;
  const auto& LI = tables.linear;

  std::vector<repro_line> repro = {
      {"H at the published optimum", H.H_value, reference::published_H, 0.002,
       std::abs(H.H_value - reference::published_H) <= 0.002},
      {"G at the published point", *G, reference::published_G, 0.002,
       std::abs(*G - reference::published_G) <= 0.002},
      {"omega bound 1/lambda + 1/theta", H.omega_bound,
       reference::published_omega, 1e-4,
       std::abs(H.omega_bound - reference::published_omega) <= 1e-4},
  };

  // JSON: every value sits in a section naming its module and settings.
  std::string tables_settings =
      jobj().add("s_max", topt.s_max).add("step", topt.step).done();
  std::string sec_tables =
      jobj()
          .str("module", "sieve_functions")
          .raw("settings", tables_settings)
          .raw("values",
               jobj()
                   .add("upper_semilinear_at_2", spot(SL, fn_kind::upper, 2.0))
                   .add("lower_semilinear_at_2", spot(SL, fn_kind::lower, 2.0))
                   .add("upper_linear_at_3", spot(LI, fn_kind::upper, 3.0))
                   .add("lower_linear_at_4", spot(LI, fn_kind::lower, 4.0))
                   .add("gap_semilinear_at_s_max",
                        SL.F_values.back() - SL.f_values.back())
                   .add("gap_linear_at_s_max",
                        LI.F_values.back() - LI.f_values.back())
                   .done())
          .done();
  std::string sec_constants =
      jobj()
          .str("module", "constants")
          .raw("settings", jobj()
                               .str("source", cons.computed
                                                  ? "computed"
                                                  : "builtin reference")
                               .add("cutoff", cons.cutoff)
                               .done())
          .raw("values", jobj()
                             .add("C", cons.C)
                             .add("c1", cons.c1)
                             .add("c2", cons.c2)
                             .add("c3", cons.c3)
                             .add("tail_error",
                                  product_tail_error(cons.cutoff))
                             .done())
          .done();
  std::string sec_integrals =
      jobj()
          .str("module", "integrals")
          .raw("settings", jobj()
                               .add("theta", th)
                               .add("theta1", t1)
                               .add("theta2", t2)
                               .done())
          .raw("values", jobj()
                             .add("switching_integral", qC.value)
                             .add("switching_integral_error", qC.abs_error_estimate)
                             .add("weighted_integral", qI.value)
                             .add("weighted_integral_error", qI.abs_error_estimate)
                             .done())
          .done();
  std::string sec_combiner =
      jobj()
          .str("module", "vector_combiner")
          .raw("settings", jobj()
                               .add("H_sigma1", 1.0 / (2.0 * t1))
                               .add("H_sigma2", 1.0 / (2.0 * t2))
                               .add("G_sigma1", 1.0 / (2.0 * g1))
                               .add("G_sigma2", 1.0 / (2.0 * g2))
                               .done())
          .raw("values", jobj()
                             .add("lower_combined_at_H_point", fH.value)
                             .add("lower_combined_at_G_point", fG.value)
                             .done())
          .done();
  std::string sec_objective =
      jobj()
          .str("module", "optimizer")
          .raw("settings", jobj()
                               .add("lambda", l)
                               .add("theta", th)
                               .add("theta1", t1)
                               .add("theta2", t2)
                               .add("G_theta1", g1)
                               .add("G_theta2", g2)
                               .done())
          .raw("values", jobj()
                             .add("H", H.H_value)
                             .add("term_main", H.term_main)
                             .add("term_switching", H.term_switching)
                             .add("term_weighted", H.term_weighted)
                             .add("G", *G)
                             .add("omega_bound", H.omega_bound)
                             .add("omega_integer_bound",
                                  H.omega_integer_bound)
                             .done())
          .done();

  jobj root;
  root.str("tool", "sievebound")
      .str("command", "report")
      .raw("sections", jarr({sec_tables, sec_constants, sec_integrals,
                             sec_combiner, sec_objective}));
  bool all_pass = true;
  if (paper_repro) {
    std::vector<std::string> checks;
    for (const auto& r : repro) {
      all_pass = all_pass && r.pass;
      checks.push_back(jobj()
                           .str("check", r.label)
                           .add("computed", r.computed)
                           .add("published", r.published)
                           .add("tolerance", r.tolerance)
                           .add("pass", r.pass)
                           .done());
    }
    root.raw("reproduction", jarr(checks));
  }
  std::string json = root.done();

  // Markdown mirror.
  std::ostringstream md;
  md << "# sievebound report\n\n";
  md << "## sieve function tables\n\nmodule: sieve_functions — settings: "
     << "s_max = " << jnum(topt.s_max) << ", step = " << jnum(topt.step)
     << "\n\n";
  md << md_table({{"upper semilinear at s = 2", jnum(spot(SL, fn_kind::upper, 2.0))},
                  {"lower semilinear at s = 2", jnum(spot(SL, fn_kind::lower, 2.0))},
                  {"upper linear at s = 3", jnum(spot(LI, fn_kind::upper, 3.0))},
                  {"lower linear at s = 4", jnum(spot(LI, fn_kind::lower, 4.0))},
                  {"upper-lower gap, semilinear, at s_max",
                   jnum(SL.F_values.back() - SL.f_values.back())},
                  {"upper-lower gap, linear, at s_max",
                   jnum(LI.F_values.back() - LI.f_values.back())}})
     << "\n";
  md << "## constants\n\nmodule: constants — settings: source = "
     << (cons.computed ? "computed" : "builtin reference")
     << ", cutoff = " << jnum(static_cast<unsigned long long>(cons.cutoff))
     << "\n\n";
  md << md_table({{"C", jnum(cons.C)},
                  {"c1", jnum(cons.c1)},
                  {"c2", jnum(cons.c2)},
                  {"c3", jnum(cons.c3)},
                  {"tail error bound", jnum(product_tail_error(cons.cutoff))}})
     << "\n";
  md << "## integrals\n\nmodule: integrals — settings: theta = " << jnum(th)
     << ", theta1 = " << jnum(t1) << ", theta2 = " << jnum(t2) << "\n\n";
  md << md_table({{"switching integral C(theta1)", jnum(qC.value)},
                  {"weighted integral I(theta, theta1, theta2)",
                   jnum(qI.value)}})
     << "\n";
  md << "## combined sieve functions\n\nmodule: vector_combiner — settings: "
     << "sigma pairs from the objective points above\n\n";
  md << md_table({{"combined lower value at the H point", jnum(fH.value)},
                  {"combined lower value at the G point", jnum(fG.value)}})
     << "\n";
  md << "## objective\n\nmodule: optimizer — settings: lambda = " << jnum(l)
     << ", theta = " << jnum(th) << ", theta1 = " << jnum(t1)
     << ", theta2 = " << jnum(t2) << "; G point theta1 = " << jnum(g1)
     << ", theta2 = " << jnum(g2) << "\n\n";
  md << md_table({{"H", jnum(H.H_value)},
                  {"main term", jnum(H.term_main)},
                  {"switching term", jnum(H.term_switching)},
                  {"weighted term", jnum(H.term_weighted)},
                  {"G", jnum(*G)},
                  {"omega bound", jnum(H.omega_bound)},
                  {"omega integer bound",
                   jnum(static_cast<long long>(H.omega_integer_bound))}})
     << "\n";
  if (paper_repro) {
    md << "## headline reproduction\n\n"
       << "| check | computed | published | tolerance | status |\n"
       << "|---|---|---|---|---|\n";
    for (const auto& r : repro)
      md << "| " << r.label << " | " << jnum(r.computed) << " | "
         << jnum(r.published) << " | " << jnum(r.tolerance) << " | "
         << (r.pass ? "PASS" : "FAIL") << " |\n";
    md << "\n";
  }

  std::string json_path = out_dir + "/report.json";
  std::string md_path = out_dir + "/report.md";
  {
    std::ofstream jf(json_path, std::ios::binary);
    if (!jf) throw std::runtime_error("report: cannot write " + json_path);
    jf << json << "\n";
  }
  {
    std::ofstream mf(md_path, std::ios::binary);
    if (!mf) throw std::runtime_error("report: cannot write " + md_path);
    mf << md.str();
  }
  std::fprintf(stderr, "wrote %s and %s\n", json_path.c_str(),
               md_path.c_str());

  if (paper_repro) {
    for (const auto& r : repro)
      std::fprintf(stdout, "%s: %s (computed = %s, published = %s, tolerance = %s)\n",
                   r.label.c_str(), r.pass ? "PASS" : "FAIL",
                   jnum(r.computed).c_str(), jnum(r.published).c_str(),
                   jnum(r.tolerance).c_str());
    return all_pass ? 0 : 1;
  }
  return 0;
}

// ---- driver ------------------------------------------------------------

int run(std::vector<std::string> args) {
  CLI::App app{"Numerical toolkit for a sieve-theoretic bound on Omega(p+2)\n"
               "over primes p with p-1 a sum of two positive squares"};
  app.require_subcommand(1);
  app.footer(
      "Any subcommand accepts --config FILE with line-oriented `key = value`\n"
      "pairs (# comments); each pair expands to --key=value in place.\n"
      "SIEVEBOUND_CACHE_DIR names a default sieve-table cache directory.\n"
      "Exit codes: 0 success, 1 check failure, 2 usage error.");

  // tabulate
  auto* c_tab = app.add_subcommand(
      "tabulate", "Build (and cache) the sieve function tables");
  table_options tab_topt;
  bool tab_force = false;
  add_table_options(c_tab, tab_topt);
  c_tab->add_flag("--force", tab_force, "Rebuild even when a cache file matches");

  // constants
  auto* c_con = app.add_subcommand(
      "constants", "Euler-product constants with a tail error bound");
  std::uint64_t con_cutoff = 100000000ull;
  bool con_variant = false, con_raw = false;
  c_con->add_option("--cutoff", con_cutoff,
                    "Prime cutoff for the partial products (default 1e8)");
  c_con->add_flag("--variant-C", con_variant,
                  "Also print the statement variant of C's second product");
  c_con->add_flag("--raw-c3", con_raw,
                  "Also print the unaccelerated interleaved c3 partial product");

  // integral
  auto* c_int = app.add_subcommand(
      "integral", "Switching integral C(theta1) or weighted integral I");
  std::string int_kind;
  double int_theta = 0, int_theta1 = 0, int_theta2 = 0;
  table_options int_topt;
  c_int->add_option("--kind", int_kind, "C or I")
      ->required()
      ->check(CLI::IsMember({"C", "I"}));
  c_int->add_option("--theta1", int_theta1, "Switching exponent")->required();
  c_int->add_option("--theta", int_theta, "Weight exponent (kind I)");
  c_int->add_option("--theta2", int_theta2, "Pre-sieve exponent (kind I)");
  add_table_options(c_int, int_topt);

  // combine
  auto* c_com = app.add_subcommand(
      "combine", "Combined upper/lower sieve functions at (sigma1, sigma2)");
  double com_s1 = 0, com_s2 = 0;
  table_options com_topt;
  c_com->add_option("--sigma1", com_s1, "Semi-linear budget")->required();
  c_com->add_option("--sigma2", com_s2, "Linear budget")->required();
  add_table_options(c_com, com_topt);

  // optimize
  auto* c_opt = app.add_subcommand(
      "optimize", "Grid search over the objective G or H");
  std::string opt_mode;
  table_options opt_topt;
  constant_options opt_copt;
  int opt_threads = default_threads();
  double og_t1_lo = 0.25, og_t1_hi = 0.5, og_t2_lo = 0.020, og_t2_hi = 0.024;
  double og_step = 1e-4;
  h_grid_spec oh;
  c_opt->add_option("--mode", opt_mode, "G or H")
      ->required()
      ->check(CLI::IsMember({"G", "H"}));
  c_opt->add_option("--threads", opt_threads, "Worker threads");
  c_opt->add_option("--theta1-lo", og_t1_lo, "G: theta1 range start | H: grid start");
  c_opt->add_option("--theta1-hi", og_t1_hi, "G: theta1 range end | H: grid end");
  c_opt->add_option("--theta2-lo", og_t2_lo, "G: theta2 range start | H: grid start");
  c_opt->add_option("--theta2-hi", og_t2_hi, "G: theta2 range end | H: grid end");
  c_opt->add_option("--scan-step", og_step, "G scan step (default 1e-4)");
  c_opt->add_option("--lambda-lo", oh.lambda_lo, "H: lambda grid start");
  c_opt->add_option("--lambda-hi", oh.lambda_hi, "H: lambda grid end");
  c_opt->add_option("--lambda-step", oh.lambda_step, "H: lambda grid step");
  c_opt->add_option("--theta-lo", oh.theta_lo, "H: theta grid start");
  c_opt->add_option("--theta-hi", oh.theta_hi, "H: theta grid end");
  c_opt->add_option("--theta-step", oh.theta_step, "H: theta grid step");
  c_opt->add_option("--theta1-step", oh.theta1_step, "H: theta1 grid step");
  c_opt->add_option("--theta2-step", oh.theta2_step, "H: theta2 grid step");
  c_opt->add_option("--refine", oh.refine_rounds, "H: refinement rounds");
  add_table_options(c_opt, opt_topt);
  add_constant_options(c_opt, opt_copt);

  // verify
  auto* c_ver = app.add_subcommand(
      "verify", "Exact identity checks on the enumerated sifted sets");
  std::uint64_t ver_x = 0;
  double ver_t1 = 0, ver_t2 = 0, ver_th = 0, ver_l = 0;
  c_ver->add_option("--x", ver_x, "Enumeration bound")->required();
  c_ver->add_option("--theta1", ver_t1, "Buchstab split exponent")->required();
  c_ver->add_option("--theta2", ver_t2, "Pre-sieve exponent")->required();
  auto* o_th = c_ver->add_option("--theta", ver_th,
                                 "Weight exponent (enables the weighted chain)");
  auto* o_l = c_ver->add_option("--lambda", ver_l,
                                "Weight multiplier (enables the weighted chain)");

  // census
  auto* c_cen = app.add_subcommand(
      "census", "Count primes p <= x with p-1 = a^2+b^2 and Omega(p+2) <= k");
  std::uint64_t cen_x = 0;
  int cen_k = 11;
  bool cen_csv = false, cen_big = false;
  c_cen->add_option("--x", cen_x, "Count primes up to x")->required();
  c_cen->add_option("--k", cen_k, "Prime-factor budget for p+2 (default 11)");
  c_cen->add_flag("--csv", cen_csv,
                  "CSV rows at logarithmic checkpoints 10, 100, ..., x");
  c_cen->add_flag("--big", cen_big, "Allow x beyond 1e8 (streaming, up to 2e9)");

  // report
  auto* c_rep = app.add_subcommand(
      "report", "Write report.json and report.md over all modules");
  table_options rep_topt;
  constant_options rep_copt;
  bool rep_repro = false;
  std::string rep_out = ".";
  c_rep->add_flag("--paper-repro", rep_repro,
                  "Check the published headline values and print PASS/FAIL");
  c_rep->add_option("--out-dir", rep_out, "Output directory (default .)");
  add_table_options(c_rep, rep_topt);
  add_constant_options(c_rep, rep_copt);

  // Expand --config before CLI11 sees the arguments.
  std::vector<std::string> expanded;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config") {
      if (i + 1 >= args.size())
        throw std::invalid_argument("--config needs a file argument");
      auto toks = expand_config(args[++i]);
      expanded.insert(expanded.end(), toks.begin(), toks.end());
    } else if (a.rfind("--config=", 0) == 0) {
      auto toks = expand_config(a.substr(9));
      expanded.insert(expanded.end(), toks.begin(), toks.end());
    } else {
      expanded.push_back(a);
    }
  }
  std::vector<const char*> argv;
  argv.push_back("sievebound");
  for (const auto& s : expanded) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    std::fputs(app.help().c_str(), stdout);  // delegates to the parsed subcommand
    return 0;
  }

  if (c_tab->parsed()) return cmd_tabulate(tab_topt, tab_force);
  if (c_con->parsed()) return cmd_constants(con_cutoff, con_variant, con_raw);
  if (c_int->parsed()) {
    if (int_kind == "I" && (!*c_int->get_option("--theta") ||
                            !*c_int->get_option("--theta2")))
      throw std::invalid_argument(
          "integral --kind I needs --theta and --theta2");
    return cmd_integral(int_kind, int_theta, int_theta1, int_theta2, int_topt);
  }
  if (c_com->parsed()) return cmd_combine(com_s1, com_s2, com_topt);
  if (c_opt->parsed()) {
    sieve_table_pair tables = tabulate_pair(opt_topt.s_max, opt_topt.step,
                                            opt_topt.cache_dir);
    resolved_constants cons = resolve_constants(opt_copt);
    objective_evaluator ev(tables, cons.C, cons.c1, cons.c2, cons.c3);
    if (opt_mode == "G")
      return cmd_optimize_G(ev, og_t1_lo, og_t1_hi, og_t2_lo, og_t2_hi,
                            og_step, opt_threads);
    oh.theta1_lo = og_t1_lo;
    oh.theta1_hi = og_t1_hi;
    oh.theta2_lo = og_t2_lo;
    oh.theta2_hi = og_t2_hi;
    return cmd_optimize_H(ev, oh, opt_threads);
  }
  if (c_ver->parsed()) {
    bool has_th = static_cast<bool>(*o_th), has_l = static_cast<bool>(*o_l);
    if (has_th != has_l)
      throw std::invalid_argument("verify needs --theta and --lambda together");
    return cmd_verify(ver_x, ver_t1, ver_t2, ver_th, ver_l, has_th);
  }
  if (c_cen->parsed()) return cmd_census(cen_x, cen_k, cen_csv, cen_big);
  if (c_rep->parsed())
    return cmd_report(rep_topt, rep_copt, rep_repro, rep_out);
  return 2;  // unreachable: require_subcommand(1)
}

}  // namespace

int main(int argc, char** argv) {
  auto t0 = std::chrono::steady_clock::now();
  int rc;
  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    rc = run(std::move(args));
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "sievebound: %s\n", e.what());
    rc = 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "sievebound: %s\n", e.what());
    rc = 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "sievebound: %s\n", e.what());
    rc = 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "sievebound: %s\n", e.what());
    rc = 1;
  }
  auto t1 = std::chrono::steady_clock::now();
  double secs = std::chrono::duration<double>(t1 - t0).count();
  std::fprintf(stderr, "runtime_seconds %.3f\n", secs);
  return rc;
}

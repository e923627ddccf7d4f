#pragma once
// Upper and lower sieve functions for two sieve dimensions:
//   semi-linear (kappa = 1/2, sifting limit beta = 1): F1, f1
//   linear      (kappa = 1,   sifting limit beta = 2): F2, f2
// Each function has a closed form on an initial range and is continued
// beyond it by the coupled delay system
//   d/ds (s^kappa F(s)) = kappa s^(kappa-1) f(s-1)
//   d/ds (s^kappa f(s)) = kappa s^(kappa-1) F(s-1)
// marched with a fixed-step fourth-order scheme. Because the right-hand
// side does not involve the unknown at s, the classical Runge-Kutta update
// degenerates to Simpson's rule over each step; half-step retarded reads
// land between grid nodes and are served by monotone cubic interpolation.
// Both functions tend to 1 from their respective sides as s grows.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "sievebound/interpolation.hpp"

namespace sievebound {

inline constexpr double euler_gamma = 0.5772156649015329;
inline const double exp_gamma = std::exp(euler_gamma);

struct sieve_dimension {
  double kappa;
  int beta;  // sifting limit; lower function vanishes on [0, beta]
};

inline constexpr sieve_dimension semilinear_dimension{0.5, 1};
inline constexpr sieve_dimension linear_dimension{1.0, 2};

// ---- closed forms on the initial ranges -------------------------------

// F1 on (0, 2]: 2 (e^gamma / (pi s))^(1/2).
inline double eval_F1_closed(double s) {
  if (!(s > 0.0 && s <= 2.0 + 1e-9))
    throw std::domain_error("eval_F1_closed: need 0 < s <= 2");
  return 2.0 * std::sqrt(exp_gamma / (std::numbers::pi * s));
}

// f1 on [1, 3]: (e^gamma / (pi s))^(1/2) log(1 + 2(s-1) + 2 sqrt(s(s-1))).
inline double eval_f1_closed(double s) {
  if (!(s >= 1.0 - 1e-9 && s <= 3.0 + 1e-9))
    throw std::domain_error("eval_f1_closed: need 1 <= s <= 3");
  double r = s - 1.0 < 0.0 ? 0.0 : s - 1.0;
  double arg = 1.0 + 2.0 * r + 2.0 * std::sqrt(s * r);
  return std::sqrt(exp_gamma / (std::numbers::pi * s)) * std::log(arg);
}

// F2 on [1, 3]: 2 e^gamma / s.
inline double eval_F2_closed(double s) {
  if (!(s >= 1.0 - 1e-9 && s <= 3.0 + 1e-9))
    throw std::domain_error("eval_F2_closed: need 1 <= s <= 3");
  return 2.0 * exp_gamma / s;
}

// f2 on [2, 4]: 2 e^gamma log(s - 1) / s.
inline double eval_f2_closed(double s) {
  if (!(s >= 2.0 - 1e-9 && s <= 4.0 + 1e-9))
    throw std::domain_error("eval_f2_closed: need 2 <= s <= 4");
  double r = s - 1.0 < 1.0 ? 1.0 : s - 1.0;
  return 2.0 * exp_gamma * std::log(r) / s;
}

// ---- tabulation -------------------------------------------------------

enum class fn_kind { upper, lower };  // F respectively f

struct sieve_function_table {
  sieve_dimension dimension{};
  double s_max = 0.0;  // last grid abscissa (count-1)*step
  double step = 0.0;
  double F_closed_end = 0.0;  // closed form used for s <= this
  double f_closed_end = 0.0;
  double f_domain_min = 0.0;  // lower function defined (and 0) at this point
  std::vector<double> F_values;  // index i <-> s = i*step; NaN below domain
  std::vector<double> f_values;
  std::size_t count() const { return F_values.size(); }
};

namespace detail {

// Retarded reads during the march. Below the sifting limit the lower
// function is identically zero; inside the closed range the closed form is
// exact; beyond it the already-marched table is interpolated.
struct retarded_reader {
  const std::vector<double>* values;
  double step;
  double closed_end;
  double zero_below;  // lower functions only; negative disables
  double (*closed)(double);
  std::size_t lo, hi;

  double operator()(double s) const {
    if (zero_below >= 0.0 && s <= zero_below + 1e-12) return 0.0;
    if (s <= closed_end + 1e-9) return closed(s);
    return interp_monotone_cubic(*values, step, s, lo, hi);
  }
};

}  // namespace detail

// Tabulates one dimension on the grid s = i*step, i = 0..count-1. The
// closed ranges are filled exactly; the march continues both functions to
// s_max. A quadrature self-check reruns the lower function's closed range
// from its left end through the delay system and fails if the residual
// against the closed form exceeds 1e-6.
inline sieve_function_table tabulate(sieve_dimension dim, double s_max = 60.0,
                                     double step = 1e-4) {
  if (!(s_max >= 10.0)) throw std::domain_error("tabulate: need s_max >= 10");
  if (!(step > 0.0 && step <= 1e-3))
    throw std::domain_error("tabulate: need 0 < step <= 1e-3");
  bool semilinear = dim.beta == 1;
  if (!semilinear && dim.beta != 2)
    throw std::domain_error("tabulate: unsupported dimension");

  auto n = static_cast<std::size_t>(std::floor(s_max / step + 1e-9));
  sieve_function_table t;
  t.dimension = dim;
  t.step = step;
  t.s_max = static_cast<double>(n) * step;
  t.F_closed_end = semilinear ? 2.0 : 3.0;
  t.f_closed_end = semilinear ? 3.0 : 4.0;
  t.f_domain_min = semilinear ? 1.0 : 2.0;
  double (*Fc)(double) = semilinear ? eval_F1_closed : eval_F2_closed;
  double (*fc)(double) = semilinear ? eval_f1_closed : eval_f2_closed;

  double nan = std::nan("");
  t.F_values.assign(n + 1, nan);
  t.f_values.assign(n + 1, nan);

  auto idx = [&](double s) {
    return static_cast<std::size_t>(std::floor(s / step + 1e-9));
  };
  std::size_t iF_lo = semilinear ? 1 : idx(1.0);
  std::size_t if_lo = idx(t.f_domain_min);
  std::size_t iF0 = idx(t.F_closed_end);
  std::size_t if0 = idx(t.f_closed_end);
  for (std::size_t i = iF_lo; i <= iF0; ++i)
    t.F_values[i] = Fc(static_cast<double>(i) * step);
  for (std::size_t i = if_lo; i <= if0; ++i)
    t.f_values[i] = fc(static_cast<double>(i) * step);
  double kappa = dim.kappa;
  detail::retarded_reader read_f{&t.f_values, step, t.f_closed_end,
                                 t.f_domain_min, fc, if_lo, n};
  detail::retarded_reader read_F{&t.F_values, step, t.F_closed_end, -1.0, Fc,
                                 iF_lo, n};

  auto rhs = [&](const detail::retarded_reader& rd, double s) {
    return kappa * std::pow(s, kappa - 1.0) * rd(s - 1.0);
  };

  double sF = static_cast<double>(iF0) * step;
  double sf = static_cast<double>(if0) * step;
  double yF = std::pow(sF, kappa) * Fc(sF);
  double yf = std::pow(sf, kappa) * fc(sf);
  for (std::size_t i = std::min(iF0, if0); i < n; ++i) {
    double s0 = static_cast<double>(i) * step;
    double s1 = s0 + step;
    double sm = s0 + 0.5 * step;
    if (i >= iF0) {
      yF += step / 6.0 * (rhs(read_f, s0) + 4.0 * rhs(read_f, sm) +
                          rhs(read_f, s1));
      t.F_values[i + 1] = yF / std::pow(s1, kappa);
    }
    if (i >= if0) {
      yf += step / 6.0 * (rhs(read_F, s0) + 4.0 * rhs(read_F, sm) +
                          rhs(read_F, s1));
      t.f_values[i + 1] = yf / std::pow(s1, kappa);
    }
  }

  // Self-check: continue the lower function across its own closed range
  // from the sifting limit, reading only the closed upper form, and compare
  // the right endpoint. The semi-linear integrand has an inverse-square-root
  // singularity at the left end, so that case marches in u = sqrt(s-1)
  // where it is analytic.
  double residual;
  if (semilinear) {
    double c0 = std::sqrt(exp_gamma / std::numbers::pi);
    double u_end = std::sqrt(2.0), y = 0.0;
    auto m = static_cast<std::size_t>(std::ceil(u_end / step));
    double hu = u_end / static_cast<double>(m);
    auto g = [&](double u) { return 2.0 * c0 / std::sqrt(1.0 + u * u); };
    for (std::size_t i = 0; i < m; ++i) {
      double u0 = static_cast<double>(i) * hu;
      y += hu / 6.0 * (g(u0) + 4.0 * g(u0 + 0.5 * hu) + g(u0 + hu));
    }
    residual = std::abs(y / std::sqrt(3.0) - eval_f1_closed(3.0));
  } else {
    double y = 0.0;
    std::size_t a = if_lo, b = if0;
    auto g = [&](double s) { return 2.0 * exp_gamma / (s - 1.0); };
    for (std::size_t i = a; i < b; ++i) {
      double s0 = static_cast<double>(i) * step;
      y += step / 6.0 * (g(s0) + 4.0 * g(s0 + 0.5 * step) + g(s0 + step));
    }
    double send = static_cast<double>(b) * step;
    residual = std::abs(y / send - eval_f2_closed(send));
  }
  if (residual > 1e-6)
    throw std::runtime_error(
        "tabulate: step too coarse, closed-range continuation residual " +
        std::to_string(residual));
  return t;
}

// Evaluate F (upper) or f (lower) from a table. Below the domain is an
// error; the closed range is served exactly; past s_max the value at s_max
// is returned (both functions are flat there to within tolerance).
inline double eval(const sieve_function_table& t, fn_kind kind, double s) {
  bool semilinear = t.dimension.beta == 1;
  if (kind == fn_kind::upper) {
    double lo = semilinear ? 0.0 : 1.0;
    if (semilinear ? !(s > lo) : !(s >= lo - 1e-9))
      throw std::domain_error("eval: s below the upper function's domain");
    if (s <= t.F_closed_end + 1e-9)
      return semilinear ? eval_F1_closed(std::min(s, t.F_closed_end))
                        : eval_F2_closed(std::min(std::max(s, 1.0), t.F_closed_end));
    if (s >= t.s_max) return t.F_values.back();
    std::size_t lo_idx = semilinear ? 1 : static_cast<std::size_t>(
                                              std::floor(1.0 / t.step + 1e-9));
    return detail::interp_monotone_cubic(t.F_values, t.step, s, lo_idx,
                                         t.count() - 1);
  }
  if (!(s >= t.f_domain_min - 1e-9))
    throw std::domain_error("eval: s below the lower function's domain");
  if (s <= t.f_closed_end + 1e-9) {
    double c = std::min(std::max(s, t.f_domain_min), t.f_closed_end);
    return semilinear ? eval_f1_closed(c) : eval_f2_closed(c);
  }
  if (s >= t.s_max) return t.f_values.back();
  std::size_t lo_idx =
      static_cast<std::size_t>(std::floor(t.f_domain_min / t.step + 1e-9));
  return detail::interp_monotone_cubic(t.f_values, t.step, s, lo_idx,
                                       t.count() - 1);
}

// ---- binary cache -----------------------------------------------------
// Layout (little-endian): magic "SBTABLE1", double kappa, uint32 beta,
// double s_max, double step, uint64 count, then count doubles of F values
// and count doubles of f values (NaN marks points below the domain).

inline void write_table_cache(const std::string& path,
                              const sieve_function_table& t) {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw std::runtime_error("write_table_cache: cannot open " + path);
  const char magic[8] = {'S', 'B', 'T', 'A', 'B', 'L', 'E', '1'};
  std::uint32_t beta = static_cast<std::uint32_t>(t.dimension.beta);
  std::uint64_t count = t.count();
  bool ok = std::fwrite(magic, 1, 8, fp) == 8 &&
            std::fwrite(&t.dimension.kappa, 8, 1, fp) == 1 &&
            std::fwrite(&beta, 4, 1, fp) == 1 &&
            std::fwrite(&t.s_max, 8, 1, fp) == 1 &&
            std::fwrite(&t.step, 8, 1, fp) == 1 &&
            std::fwrite(&count, 8, 1, fp) == 1 &&
            std::fwrite(t.F_values.data(), 8, count, fp) == count &&
            std::fwrite(t.f_values.data(), 8, count, fp) == count;
  std::fclose(fp);
  if (!ok) throw std::runtime_error("write_table_cache: short write to " + path);
}

// Returns false when the file is missing or malformed; the caller rebuilds.
inline bool read_table_cache(const std::string& path,
                             sieve_function_table& out) {
  std::FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) return false;
  char magic[8];
  double kappa, s_max, step;
  std::uint32_t beta;
  std::uint64_t count;
  bool ok = std::fread(magic, 1, 8, fp) == 8 &&
            std::memcmp(magic, "SBTABLE1", 8) == 0 &&
            std::fread(&kappa, 8, 1, fp) == 1 &&
            std::fread(&beta, 4, 1, fp) == 1 &&
            std::fread(&s_max, 8, 1, fp) == 1 &&
            std::fread(&step, 8, 1, fp) == 1 &&
            std::fread(&count, 8, 1, fp) == 1 && count >= 2 &&
            count < (1u << 31);
  if (ok) {
    out.dimension = {kappa, static_cast<int>(beta)};
    out.s_max = s_max;
    out.step = step;
    bool semilinear = beta == 1;
    out.F_closed_end = semilinear ? 2.0 : 3.0;
    out.f_closed_end = semilinear ? 3.0 : 4.0;
    out.f_domain_min = semilinear ? 1.0 : 2.0;
    out.F_values.resize(count);
    out.f_values.resize(count);
    ok = std::fread(out.F_values.data(), 8, count, fp) == count &&
         std::fread(out.f_values.data(), 8, count, fp) == count;
  }
  std::fclose(fp);
  return ok;
}

// Tabulate with a file cache: reuse when the header matches the request
// exactly, otherwise rebuild and overwrite. Empty path disables caching.
inline sieve_function_table tabulate_cached(sieve_dimension dim, double s_max,
                                            double step,
                                            const std::string& path) {
  auto n = static_cast<std::size_t>(std::floor(s_max / step + 1e-9));
  double actual_s_max = static_cast<double>(n) * step;
  if (!path.empty()) {
    sieve_function_table t;
    if (read_table_cache(path, t) && t.dimension.kappa == dim.kappa &&
        t.dimension.beta == dim.beta && t.s_max == actual_s_max &&
        t.step == step)
      return t;
  }
  sieve_function_table t = tabulate(dim, s_max, step);
  if (!path.empty()) write_table_cache(path, t);
  return t;
}

struct sieve_table_pair {
  sieve_function_table semilinear;
  sieve_function_table linear;
};

// cache_dir empty: consult SIEVEBOUND_CACHE_DIR, then fall back to no cache.
inline sieve_table_pair tabulate_pair(double s_max = 60.0, double step = 1e-4,
                                      std::string cache_dir = "") {
  if (cache_dir.empty()) {
    const char* env = std::getenv("SIEVEBOUND_CACHE_DIR");
    if (env) cache_dir = env;
  }
  auto name = [&](const char* tag) {
    if (cache_dir.empty()) return std::string();
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s/sieve_%s_s%g_h%g.tab", cache_dir.c_str(),
                  tag, s_max, step);
    return std::string(buf);
  };
  return {tabulate_cached(semilinear_dimension, s_max, step, name("semilinear")),
          tabulate_cached(linear_dimension, s_max, step, name("linear"))};
}

}  // namespace sievebound

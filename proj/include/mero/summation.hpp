#ifndef MERO_SUMMATION_HPP
#define MERO_SUMMATION_HPP

// Summability engine: Cauchy partial-sum limits, iterated Cesaro means,
// Abel x->1- limits, and Wynn-epsilon acceleration. Serves as the
// independent oracle for every series identity the toolkit checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mero/contour.hpp"

namespace mero {

using TermFn = std::function<cplx(std::int64_t)>;  // k-th term, k >= start index

struct SummationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SumStatus { converged, summable, divergent, oscillatory };

inline const char* to_string(SumStatus s) {
  switch (s) {
    case SumStatus::converged: return "converged";
    case SumStatus::summable: return "summable";
    case SumStatus::divergent: return "divergent";
    case SumStatus::oscillatory: return "oscillatory";
  }
  return "?";
}

struct SummationResult {
  std::string method;
  std::optional<cplx> value;
  SumStatus status = SumStatus::divergent;
  double error_estimate = 0.0;
  std::vector<cplx> trace;  // method-specific tail / grid values
};

namespace detail {

struct WindowStats {
  double spread;      // diameter of the window values
  double mean_first;  // mean |s| over first half of window
  double mean_second; // mean |s| over second half
  cplx mean;
};

inline WindowStats window_stats(const std::deque<cplx>& w) {
  WindowStats st{};
  double re_min = 1e308, re_max = -1e308, im_min = 1e308, im_max = -1e308;
  cplx sum{};
  double m1 = 0, m2 = 0;
  const std::size_t half = w.size() / 2;
  for (std::size_t i = 0; i < w.size(); ++i) {
    re_min = std::min(re_min, w[i].real());
    re_max = std::max(re_max, w[i].real());
    im_min = std::min(im_min, w[i].imag());
    im_max = std::max(im_max, w[i].imag());
    sum += w[i];
    (i < half ? m1 : m2) += std::abs(w[i]);
  }
  st.spread = std::hypot(re_max - re_min, im_max - im_min);
  st.mean = sum / double(w.size());
  st.mean_first = m1 / double(half);
  st.mean_second = m2 / double(w.size() - half);
  return st;
}

inline SummationResult classify_sequence(const std::deque<cplx>& window,
                                         std::string method, double tol) {
  WindowStats st = window_stats(window);
  SummationResult out;
  out.method = std::move(method);
  out.trace.assign(window.end() - std::min<std::size_t>(window.size(), 8), window.end());
  if (st.spread < tol) {
    out.status = SumStatus::converged;
    out.value = st.mean;
    out.error_estimate = st.spread;
  } else if (st.mean_second > st.mean_first + 10.0 * tol) {
    out.status = SumStatus::divergent;
    out.error_estimate = st.spread;
  } else {
    out.status = SumStatus::oscillatory;
    out.error_estimate = st.spread;
  }
  return out;
}

}  // namespace detail

// Cauchy-sense limit of the partial sums.
inline SummationResult cauchy_limit(const TermFn& terms, std::int64_t k_max,
                                    double tol, std::int64_t k_start = 1) {
  if (k_max < 16) throw SummationError("cauchy_limit: K_max must be >= 16");
  const std::size_t window_len =
      static_cast<std::size_t>(std::max<std::int64_t>(8, k_max / 8));
  std::deque<cplx> window;
  cplx s{};
  for (std::int64_t k = k_start; k <= k_max; ++k) {
    s += terms(k);
    window.push_back(s);
    if (window.size() > window_len) window.pop_front();
  }
  SummationResult r = detail::classify_sequence(window, "cauchy", tol);
  if (r.status == SumStatus::converged) r.value = window.back();
  return r;
}

// Iterated means of the partial sums, m levels (C,m).
inline SummationResult cesaro_sum(const TermFn& terms, int order, std::int64_t k_max,
                                  double tol, std::int64_t k_start = 1) {
  if (order < 1) throw SummationError("cesaro_sum: order must be >= 1");
  if (order > 4) throw SummationError("cesaro_sum: order above 4 not supported");
  const std::size_t window_len =
      static_cast<std::size_t>(std::max<std::int64_t>(8, k_max / 8));
  std::deque<cplx> raw_window, mean_window;
  cplx s{};
  std::vector<cplx> running(static_cast<std::size_t>(order), cplx{});
  std::int64_t n = 0;
  for (std::int64_t k = k_start; k <= k_max; ++k) {
    s += terms(k);
    ++n;
    cplx level = s;
    for (int m = 0; m < order; ++m) {
      running[static_cast<std::size_t>(m)] += level;
      level = running[static_cast<std::size_t>(m)] / double(n);
    }
    raw_window.push_back(s);
    mean_window.push_back(level);
    if (raw_window.size() > window_len) raw_window.pop_front();
    if (mean_window.size() > window_len) mean_window.pop_front();
  }
  SummationResult means = detail::classify_sequence(
      mean_window, "cesaro(" + std::to_string(order) + ")", tol);
  SummationResult raw = detail::classify_sequence(raw_window, "cauchy", tol);
  if (raw.status == SumStatus::converged) {
    // partial sums already settle: report their limit (the means approach
    // the same value, only slower)
    means.status = SumStatus::converged;
    means.value = raw_window.back();
    means.error_estimate = raw.error_estimate;
  } else if (means.status == SumStatus::converged) {
    means.status = SumStatus::summable;
  }
  return means;
}

struct WynnResult {
  cplx value;
  double error_estimate = 0.0;
};

// Wynn epsilon algorithm; returns the deepest stable even-column entry.
// Near-zero denominators stop the recursion and the best prior column is
// used instead.
inline WynnResult wynn_epsilon(const std::vector<cplx>& seq) {
  if (seq.size() < 5) throw SummationError("wynn_epsilon: need at least 5 entries");
  const std::size_t n = seq.size();
  std::vector<cplx> prev(n, cplx{});  // column k-1
  std::vector<cplx> cur = seq;        // column k
  WynnResult out{cur.back(), std::abs(cur[n - 1] - cur[n - 2])};
  cplx last_even = cur.back();
  bool have_last = true;
  double seq_scale = 0.0;
  for (const cplx& v : seq) seq_scale = std::max(seq_scale, std::abs(v));
  for (std::size_t col = 1; col < n; ++col) {
    std::vector<cplx> next(n - col);
    for (std::size_t i = 0; i + col < n; ++i) {
      cplx d = cur[i + 1] - cur[i];
      if (std::abs(d) < 1e-15 * (std::abs(cur[i + 1]) + std::abs(cur[i]) + 1e-30)) {
        // numerical breakdown: the previous even column already matched
        if (col % 2 == 1 && have_last) {
          out.value = last_even;
          out.error_estimate = 0.0;
        }
        return out;
      }
      next[i] = prev[i + 1] + 1.0 / d;
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (col % 2 == 0 && !cur.empty()) {
      cplx corner = cur.back();
      if (std::isfinite(corner.real()) && std::isfinite(corner.imag()) &&
          std::abs(corner) < 1e6 * (seq_scale + 1.0)) {
        double step = std::abs(corner - last_even);
        out.value = corner;
        out.error_estimate = step;
        last_even = corner;
        have_last = true;
      } else {
        return out;
      }
    }
    if (cur.size() < 2) break;
  }
  return out;
}

inline std::vector<double> default_abel_grid() {
  std::vector<double> g;
  for (int j = 3; j <= 18; ++j) g.push_back(1.0 - std::ldexp(1.0, -j));
  return g;
}

inline constexpr std::int64_t kAbelTermCap = 2'000'000;

// Abel limit: F(x) = sum terms(k) x^k on the grid, Wynn-extrapolated to
// x -> 1-. Truncation per grid point is driven by the polynomial growth
// bound C k^p estimated from the first 64 terms; grid entries whose bound
// cannot be met within the term cap are dropped from the extrapolation.
inline SummationResult abel_sum(const TermFn& terms, std::vector<double> x_grid,
                                std::int64_t k_max_cap = kAbelTermCap,
                                double tol = 1e-9, std::int64_t k_start = 1) {
  if (x_grid.empty()) x_grid = default_abel_grid();
  for (double x : x_grid)
    if (!(x > 0.0 && x < 1.0)) throw SummationError("abel_sum: x grid must lie in (0,1)");
  std::sort(x_grid.begin(), x_grid.end());

  // growth estimate |u_k| <= C k^p from the first 64 terms
  std::vector<double> lk, lu;
  double umax = 0.0;
  for (std::int64_t k = k_start; k < k_start + 64; ++k) {
    double a = std::abs(terms(k));
    umax = std::max(umax, a);
    if (a > 1e-300 && k > 0) {
      lk.push_back(std::log(double(k)));
      lu.push_back(std::log(a));
    }
  }
  double p = 0.0;
  if (lk.size() >= 8) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lk.size(); ++i) {
      sx += lk[i]; sy += lu[i]; sxx += lk[i] * lk[i]; sxy += lk[i] * lu[i];
    }
    double det = double(lk.size()) * sxx - sx * sx;
    if (det > 0) p = std::max(0.0, (double(lk.size()) * sxy - sx * sy) / det);
  }
  p = std::ceil(p * 2.0) / 2.0;  // round up to half-integers
  if (p > 6.0) throw SummationError("abel_sum: term growth exceeds polynomial bound");
  const double C = std::max(umax, 1e-12);

  std::vector<cplx> certified;
  std::vector<double> certified_x;
  for (double x : x_grid) {
    // smallest K with C K^p x^K / (1-x) < tol/10, searched past the hump
    const double lx = std::log(x);
    const double hump = p > 0 ? -p / lx : 0.0;
    std::int64_t K = std::max<std::int64_t>(128, static_cast<std::int64_t>(hump) + 1);
    bool met = false;
    auto bound = [&](std::int64_t k) {
      return C * std::pow(double(k), p) * std::exp(double(k) * lx) / (1.0 - x);
    };
    while (K <= k_max_cap) {
      if (bound(K) < tol / 10.0) { met = true; break; }
      K = K * 2;
    }
    if (!met) continue;  // not certifiable within the cap
    // refine downward
    std::int64_t lo = K / 2, hi = K;
    while (lo + 1 < hi) {
      std::int64_t mid = lo + (hi - lo) / 2;
      if (mid > hump && bound(mid) < tol / 10.0) hi = mid; else lo = mid;
    }
    K = hi;
    cplx F{};
    cplx comp{};  // Kahan
    double xp = std::pow(x, double(k_start));
    for (std::int64_t k = k_start; k <= K; ++k) {
      cplx y = terms(k) * xp - comp;
      cplx t = F + y;
      comp = (t - F) - y;
      F = t;
      xp *= x;
    }
    certified.push_back(F);
    certified_x.push_back(x);
  }

  if (certified.size() < 5)
    throw SummationError("abel_sum: too few certifiable grid points for extrapolation");
  WynnResult w = wynn_epsilon(certified);
  SummationResult out;
  out.method = "abel";
  out.value = w.value;
  out.error_estimate = w.error_estimate;
  out.trace = certified;
  out.status = SumStatus::summable;
  // Abelian consistency bookkeeping: report converged when the plain
  // partial sums already settle.
  SummationResult raw = cauchy_limit(terms, std::min<std::int64_t>(20000, k_max_cap),
                                     std::max(tol, 1e-9) * 10.0, k_start);
  if (raw.status == SumStatus::converged) out.status = SumStatus::converged;
  return out;
}

inline nlohmann::json to_json(const SummationResult& r) {
  nlohmann::json j = {{"method", r.method},
                      {"status", to_string(r.status)},
                      {"error", r.error_estimate}};
  if (r.value) j["value"] = to_json(*r.value);
  nlohmann::json trace = nlohmann::json::array();
  for (const cplx& v : r.trace) trace.push_back(to_json(v));
  j["trace"] = trace;
  return j;
}

}  // namespace mero

#endif  // MERO_SUMMATION_HPP

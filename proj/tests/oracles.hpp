#ifndef MERO_TESTS_ORACLES_HPP
#define MERO_TESTS_ORACLES_HPP

// Shared closed-form oracles and deterministic corpora for the test
// suites. Everything here is independent of the library's own numerics.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

inline double half_cot(double t) { return 0.5 / std::tan(0.5 * t); }

// Exact integer power by repeated multiplication (no exp/log branch noise).
inline cplx int_pow(cplx z, int m) {
  cplx r{1.0, 0.0};
  for (int i = 0; i < m; ++i) r *= z;
  return r;
}

// finite part of int_{-1}^{1} dt/t^m from the antiderivative t^{1-m}/(1-m)
inline double pure_power_finite_part(int m) {
  const double p = 1.0 - double(m);
  return (1.0 - std::pow(-1.0, p)) / p;
}

// ---- deterministic random expression corpus ---------------------------

inline std::string random_expr(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  auto num = [&] {
    std::uniform_real_distribution<double> d(0.1, 9.9);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", d(rng));
    return std::string(buf);
  };
  if (depth <= 0) {
    switch (pick(rng) % 4) {
      case 0: return num();
      case 1: return std::string("t");
      case 2: return std::string("pi");
      default: return std::string("i");
    }
  }
  switch (pick(rng)) {
    case 0: return "(" + random_expr(rng, depth - 1) + "+" + random_expr(rng, depth - 1) + ")";
    case 1: return "(" + random_expr(rng, depth - 1) + "-" + random_expr(rng, depth - 1) + ")";
    case 2: return "(" + random_expr(rng, depth - 1) + "*" + random_expr(rng, depth - 1) + ")";
    case 3: return "(" + random_expr(rng, depth - 1) + "/(" + num() + "+1))";
    case 4: return "sin(" + random_expr(rng, depth - 1) + ")";
    case 5: return "cos(" + random_expr(rng, depth - 1) + ")";
    case 6: return "exp(" + random_expr(rng, depth - 1) + ")";
    case 7: return "-" + random_expr(rng, depth - 1);
    case 8: return "(" + random_expr(rng, depth - 1) + ")^2";
    default: return random_expr(rng, depth - 1);
  }
}

inline std::vector<std::string> expression_corpus(int n, unsigned seed = 20260824) {
  std::mt19937 rng(seed);
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out.push_back(random_expr(rng, 3));
  return out;
}

// ---- convergent series with closed-form limits ------------------------

struct Series {
  std::function<cplx(std::int64_t)> terms;  // k >= 1
  cplx limit;
  std::string name;
};

inline std::vector<Series> convergent_series() {
  std::vector<Series> out;
  // geometric sum_{k>=1} r^k = r/(1-r)
  for (double r : {0.2, 0.35, 0.5, 0.65, 0.8, -0.2, -0.35, -0.5, -0.65, -0.8}) {
    out.push_back({[r](std::int64_t k) { return cplx(std::pow(r, double(k)), 0.0); },
                   cplx(r / (1.0 - r), 0.0),
                   "geometric r=" + std::to_string(r)});
  }
  // damped cosine sum_{k>=1} r^k cos(k th) = Re(w/(1-w)), w = r e^{i th}
  for (auto [r, th] : {std::pair{0.4, 0.7}, {0.6, 1.3}, {0.7, 2.1}, {0.5, 2.9}, {0.8, 0.3}}) {
    cplx w = r * std::polar(1.0, th);
    out.push_back({[r, th](std::int64_t k) {
                     return cplx(std::pow(r, double(k)) * std::cos(double(k) * th), 0.0);
                   },
                   cplx((w / (1.0 - w)).real(), 0.0),
                   "damped cosine r=" + std::to_string(r)});
  }
  // logarithmic sum_{k>=1} r^k/k = -log(1-r)
  for (double r : {0.3, 0.45, 0.6, 0.75, 0.85}) {
    out.push_back({[r](std::int64_t k) { return cplx(std::pow(r, double(k)) / double(k), 0.0); },
                   cplx(-std::log(1.0 - r), 0.0),
                   "log series r=" + std::to_string(r)});
  }
  return out;  // 20 entries
}

}  // namespace oracle

#endif

#ifndef MERO_FOURIER_HPP
#define MERO_FOURIER_HPP

// Trigonometric series for meromorphic functions with real poles: the
// coefficients are total-value integrals, so they exist (and are generally
// complex) even when the classical Fourier integrals diverge.

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "mero/singular.hpp"
#include "mero/summation.hpp"

namespace mero {

struct FourierError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SeriesCoefficients {
  cplx a0_half;
  std::vector<cplx> A;  // A[k-1] is the cos(k w t) coefficient
  std::vector<cplx> B;
  int k_max = 0;
  double period = 2.0 * M_PI;
  double t0 = -M_PI;
  double t1 = M_PI;
  std::vector<PoleSpec> poles;
  double realness_defect = 0.0;  // max |Im| over all coefficients

  double omega() const { return 2.0 * M_PI / period; }
};

namespace detail {

// Total value of g over [t0,t1] with the pole list, falling back to plain
// adaptive quadrature when no poles are declared.
inline cplx coefficient_integral(const CplxFn& g, double t0, double t1,
                                 const std::vector<PoleOnPath>& poles, double tol,
                                 int k, const char* which) {
  if (poles.empty()) {
    QuadResult q = integrate_adaptive([&](double x) { return g(cplx(x, 0.0)); },
                                      t0, t1, tol);
    if (!q.converged)
      throw FourierError(std::string("coefficient ") + which + "_" + std::to_string(k) +
                         ": quadrature did not converge");
    return q.value;
  }
  TotalValueResult tv = total_value(g, t0, t1, poles, {}, tol);
  if (!tv.exists)
    throw FourierError(std::string("coefficient ") + which + "_" + std::to_string(k) +
                       ": total value does not exist");
  return tv.total;
}

}  // namespace detail

// Coefficients of f on [t0,t1] with the given period: the k-th pair uses
// the kernels cos(k w tau), sin(k w tau) with w = 2 pi / period. Each
// product integrand goes through its own singular analysis (multiplying by
// sin(k tau) can lower the pole order, so nothing is reused across k).
inline SeriesCoefficients fourier_coefficients(const ExprPtr& expr,
                                               const std::vector<PoleOnPath>& poles,
                                               int k_max, double t0 = -M_PI,
                                               double t1 = M_PI,
                                               double period = 2.0 * M_PI,
                                               const std::string& variable = "t",
                                               double tol = 1e-8) {
  if (k_max < 1) throw FourierError("k_max must be >= 1");
  if (!(t0 < t1)) throw FourierError("interval requires t0 < t1");
  if (!(period > 0.0)) throw FourierError("period must be positive");
  for (const PoleOnPath& p : poles)
    if (p.location <= t0 || p.location >= t1)
      throw FourierError("pole must be interior to (t0, t1)");

  CplxFn f = as_fn(expr, variable);
  SeriesCoefficients out;
  out.k_max = k_max;
  out.period = period;
  out.t0 = t0;
  out.t1 = t1;
  const double w = out.omega();
  const double norm = 2.0 / period;

  double probe = (t1 - t0) / 8.0;
  for (const PoleOnPath& p : poles) {
    probe = std::min(probe, (p.location - t0) / 2.0);
    probe = std::min(probe, (t1 - p.location) / 2.0);
    out.poles.push_back(analyze_pole(f, cplx(p.location, 0.0), p.side, probe));
  }

  out.a0_half = 0.5 * norm * detail::coefficient_integral(f, t0, t1, poles, tol, 0, "A");
  out.A.resize(static_cast<std::size_t>(k_max));
  out.B.resize(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) {
    const double kw = double(k) * w;
    CplxFn fc = [&f, kw](cplx z) { return f(z) * std::cos(kw * z); };
    CplxFn fs = [&f, kw](cplx z) { return f(z) * std::sin(kw * z); };
    out.A[static_cast<std::size_t>(k - 1)] =
        norm * detail::coefficient_integral(fc, t0, t1, poles, tol, k, "A");
    out.B[static_cast<std::size_t>(k - 1)] =
        norm * detail::coefficient_integral(fs, t0, t1, poles, tol, k, "B");
  }

  double defect = std::abs(out.a0_half.imag());
  for (const cplx& c : out.A) defect = std::max(defect, std::abs(c.imag()));
  for (const cplx& c : out.B) defect = std::max(defect, std::abs(c.imag()));
  out.realness_defect = defect;
  return out;
}

inline cplx series_partial_sum(const SeriesCoefficients& c, double t, int K) {
  if (K < 0 || K > c.k_max) throw FourierError("partial sum order out of range");
  const double w = c.omega();
  cplx s = c.a0_half;
  for (int k = 1; k <= K; ++k) {
    s += c.A[static_cast<std::size_t>(k - 1)] * std::cos(double(k) * w * t) +
         c.B[static_cast<std::size_t>(k - 1)] * std::sin(double(k) * w * t);
  }
  return s;
}

enum class SeriesMethod { cauchy, cesaro, abel };

struct OneSidedLimits {
  cplx left;   // f(t-) (at the left endpoint: f(t1-))
  cplx right;  // f(t+) (at the left endpoint: f(t0+))
};

namespace detail {

// Extend a coefficient sequence past the table by a least-squares
// polynomial in k fitted to the tail. For meromorphic integrands the
// coefficients are eventually polynomial in k (each pole contributes a
// fixed power), so a good fit makes the extension exact; a bad fit means
// the table is too short to evaluate an infinite-sum method.
struct CoeffExtension {
  std::vector<cplx> poly;  // c0 + c1 k + c2 k^2 + c3 k^3
  double residual = 0.0;
};

inline CoeffExtension fit_coefficient_tail(const std::vector<cplx>& c) {
  const std::size_t n = c.size();
  const std::size_t take = std::min<std::size_t>(n, 12);
  std::vector<double> ks;
  std::vector<cplx> vs;
  for (std::size_t i = n - take; i < n; ++i) {
    ks.push_back(double(i + 1));
    vs.push_back(c[i]);
  }
  CoeffExtension best;
  best.residual = 1e300;
  for (int deg = 0; deg <= 3 && deg + 1 < int(take); ++deg) {
    // normal equations on the raw monomials; k is O(k_max) so this stays
    // well conditioned for deg <= 3
    const std::size_t m = static_cast<std::size_t>(deg + 1);
    std::vector<std::vector<cplx>> ata(m, std::vector<cplx>(m, cplx{}));
    std::vector<cplx> atb(m, cplx{});
    for (std::size_t r = 0; r < ks.size(); ++r) {
      double pw_i = 1.0;
      for (std::size_t i = 0; i < m; ++i) {
        double pw_j = 1.0;
        for (std::size_t j = 0; j < m; ++j) {
          ata[i][j] += pw_i * pw_j;
          pw_j *= ks[r];
        }
        atb[i] += pw_i * vs[r];
        pw_i *= ks[r];
      }
    }
    std::vector<cplx> sol = solve_dense(ata, atb);
    double res = 0.0;
    for (std::size_t r = 0; r < ks.size(); ++r) {
      cplx fit{};
      double pw = 1.0;
      for (std::size_t i = 0; i < m; ++i) { fit += sol[i] * pw; pw *= ks[r]; }
      res = std::max(res, std::abs(fit - vs[r]));
    }
    if (res < best.residual * 0.5) {
      best.poly = sol;
      best.residual = res;
    }
  }
  return best;
}

inline cplx eval_extension(const CoeffExtension& e, double k) {
  cplx v{};
  double pw = 1.0;
  for (const cplx& c : e.poly) { v += c * pw; pw *= k; }
  return v;
}

}  // namespace detail

// Sum the series at t with the requested summability method. Poles of the
// target function are break points: there (and at the endpoints) the series
// is assigned the midpoint of the supplied one-sided limits instead of a
// term-by-term sum.
inline SummationResult series_value(const SeriesCoefficients& c, double t,
                                    SeriesMethod method, int cesaro_order = 1,
                                    const OneSidedLimits* limits = nullptr,
                                    double tol = 1e-9) {
  const double point_tol = 1e-9 * std::max(1.0, std::abs(c.t1 - c.t0));
  bool at_break = false;
  if (std::abs(t - c.t0) < point_tol || std::abs(t - c.t1) < point_tol) at_break = true;
  for (const PoleSpec& p : c.poles)
    if (p.order > 0 && std::abs(t - p.location.real()) < point_tol) at_break = true;
  if (at_break) {
    if (!limits)
      throw FourierError("series value at a break/endpoint needs one-sided limits");
    SummationResult r;
    r.method = "midpoint";
    r.status = SumStatus::summable;
    r.value = 0.5 * (limits->left + limits->right);
    r.error_estimate = 0.0;
    return r;
  }
  if (t < c.t0 || t > c.t1) throw FourierError("evaluation point outside the interval");

  const double w = c.omega();
  auto table_term = [&](std::int64_t k) {
    return c.A[static_cast<std::size_t>(k - 1)] * std::cos(double(k) * w * t) +
           c.B[static_cast<std::size_t>(k - 1)] * std::sin(double(k) * w * t);
  };

  if (method == SeriesMethod::abel) {
    // Abel needs terms far beyond the table; extend both coefficient
    // sequences by their fitted tails.
    detail::CoeffExtension ea = detail::fit_coefficient_tail(c.A);
    detail::CoeffExtension eb = detail::fit_coefficient_tail(c.B);
    double cscale = 0.0;
    for (const cplx& v : c.A) cscale = std::max(cscale, std::abs(v));
    for (const cplx& v : c.B) cscale = std::max(cscale, std::abs(v));
    if (ea.residual > 1e-5 * std::max(1.0, cscale) ||
        eb.residual > 1e-5 * std::max(1.0, cscale))
      throw FourierError("coefficient table too short: tail pattern not resolved");
    TermFn terms = [&, ea, eb](std::int64_t k) {
      cplx ak = k <= c.k_max ? c.A[static_cast<std::size_t>(k - 1)]
                             : detail::eval_extension(ea, double(k));
      cplx bk = k <= c.k_max ? c.B[static_cast<std::size_t>(k - 1)]
                             : detail::eval_extension(eb, double(k));
      return ak * std::cos(double(k) * w * t) + bk * std::sin(double(k) * w * t);
    };
    SummationResult r = abel_sum(terms, {}, kAbelTermCap, tol);
    if (r.value) *r.value += c.a0_half;
    return r;
  }

  const std::int64_t K = std::max<std::int64_t>(16, c.k_max);
  SummationResult r = method == SeriesMethod::cauchy
                          ? cauchy_limit(table_term, K, tol)
                          : cesaro_sum(table_term, cesaro_order, K, tol);
  if (r.value) *r.value += c.a0_half;
  return r;
}

inline nlohmann::json to_json(const SeriesCoefficients& c) {
  nlohmann::json A = nlohmann::json::array(), B = nlohmann::json::array();
  for (const cplx& v : c.A) A.push_back(to_json(v));
  for (const cplx& v : c.B) B.push_back(to_json(v));
  return {{"a0_half", to_json(c.a0_half)},
          {"A", A},
          {"B", B},
          {"period", c.period},
          {"t0", c.t0},
          {"t1", c.t1},
          {"realness_defect", c.realness_defect}};
}

}  // namespace mero

#endif  // MERO_FOURIER_HPP

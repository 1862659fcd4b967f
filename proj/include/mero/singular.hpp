#ifndef MERO_SINGULAR_HPP
#define MERO_SINGULAR_HPP

// On-path poles: order detection, residues, Laurent heads, and the
// principal-value / by-pass / total-value integrals with eps-extrapolation.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "mero/contour.hpp"

namespace mero {

struct SingularError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxPoleOrder = 8;

// ---- small dense linear algebra for the extrapolation fits -------------

namespace detail {

// Solve A x = b by Gaussian elimination with partial pivoting; A is n x n.
inline std::vector<cplx> solve_dense(std::vector<std::vector<cplx>> A,
                                     std::vector<cplx> b) {
  const std::size_t n = A.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    if (std::abs(A[col][col]) == 0.0) throw SingularError("singular fit matrix");
    for (std::size_t r = col + 1; r < n; ++r) {
      cplx m = A[r][col] / A[col][col];
      for (std::size_t c = col; c < n; ++c) A[r][c] -= m * A[col][c];
      b[r] -= m * b[col];
    }
  }
  std::vector<cplx> x(n);
  for (std::size_t i = n; i-- > 0;) {
    cplx s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= A[i][c] * x[c];
    x[i] = s / A[i][i];
  }
  return x;
}

// Least-squares polynomial fit of given degree; returns the value at x = 0.
inline cplx polyfit_at_zero(const std::vector<double>& xs,
                            const std::vector<cplx>& ys, int degree) {
  const std::size_t n = xs.size();
  const std::size_t m = static_cast<std::size_t>(degree) + 1;
  const double xscale = *std::max_element(xs.begin(), xs.end());
  std::vector<std::vector<cplx>> ata(m, std::vector<cplx>(m, cplx{}));
  std::vector<cplx> atb(m, cplx{});
  for (std::size_t i = 0; i < n; ++i) {
    std::array<double, 8> pw{};
    double t = xs[i] / xscale;
    double p = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      pw[j] = p;
      p *= t;
    }
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c) ata[r][c] += pw[r] * pw[c];
      atb[r] += pw[r] * ys[i];
    }
  }
  return solve_dense(std::move(ata), std::move(atb))[0];
}

struct LineFit {
  double slope;
  double intercept;
  double max_residual;
};

inline LineFit linefit(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double det = n * sxx - sx * sx;
  LineFit f{};
  f.slope = (n * sxy - sx * sy) / det;
  f.intercept = (sy - f.slope * sx) / n;
  f.max_residual = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    f.max_residual = std::max(f.max_residual,
                              std::abs(ys[i] - (f.slope * xs[i] + f.intercept)));
  return f;
}

}  // namespace detail

// ---- pole classification ----------------------------------------------

inline std::vector<double> default_probe_radii(double r0 = 0.1) {
  return {r0, r0 / 2, r0 / 4, r0 / 8, r0 / 16};
}

// Smallest m >= 0 such that (z - z0)^m f(z) has a finite limit, from the
// log|f| vs log r slope across the probe radii. Throws when the slope is
// not near an integer (branch point, essential singularity).
inline int pole_order(const CplxFn& f, cplx z0, const std::vector<double>& probe_radii) {
  if (probe_radii.size() < 3)
    throw SingularError("pole_order needs at least 3 probe radii");
  std::vector<double> logr, logm;
  for (double r : probe_radii) {
    std::vector<double> mags;
    for (int j = 0; j < 16; ++j) {
      double th = 2.0 * M_PI * j / 16.0 + 0.37;  // off-axis offset
      cplx z = z0 + r * std::polar(1.0, th);
      try {
        cplx v = f(z);
        if (std::isfinite(v.real()) && std::isfinite(v.imag()))
          mags.push_back(std::abs(v));
      } catch (const EvalError&) {
      }
    }
    if (mags.size() < 8) throw SingularError("pole_order: too many evaluation failures");
    std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
    double med = mags[mags.size() / 2];
    logr.push_back(std::log(r));
    logm.push_back(std::log(std::max(med, 1e-300)));
  }
  detail::LineFit fit = detail::linefit(logr, logm);
  // magnitudes comparable to machine noise: a regular point evaluating to ~0
  bool all_tiny = *std::max_element(logm.begin(), logm.end()) < std::log(1e-13);
  if (all_tiny) return 0;
  double m_real = -fit.slope;
  int m = static_cast<int>(std::lround(m_real));
  if (fit.max_residual >= 0.1 || std::abs(m_real - m) > 0.25)
    throw SingularError("pole_order: non-integer local growth rate (slope " +
                        std::to_string(m_real) + "), not a pole");
  if (m > kMaxPoleOrder)
    throw SingularError("pole_order: order above supported maximum");
  return std::max(m, 0);
}

inline CplxFn as_fn(const ExprPtr& expr, std::string variable) {
  return [expr, variable = std::move(variable)](cplx z) {
    Bindings b;
    b.set(variable, z);
    return eval(*expr, b);
  };
}

inline int pole_order(const ExprPtr& expr, const std::string& variable, cplx z0,
                      const std::vector<double>& probe_radii) {
  return pole_order(as_fn(expr, variable), z0, probe_radii);
}

struct ResidueResult {
  cplx value;
  double cross_check_diff = 0.0;
  bool accuracy_warning = false;
};

// (1/2 pi i) of the contour integral around z0; cross-checked at half radius.
inline ResidueResult residue(const CplxFn& f, cplx z0, double radius,
                             double tol = 1e-11) {
  if (radius <= 0.0) throw SingularError("residue: radius must be positive");
  auto circle_moment = [&](double r) {
    QuadResult q = piece_integral(f, PathPiece(Arc{z0, r, -M_PI, M_PI}), tol);
    if (!q.converged) throw SingularError("residue: quadrature failure");
    return q.value / (2.0 * M_PI * cplx(0.0, 1.0));
  };
  ResidueResult out;
  out.value = circle_moment(radius);
  cplx half = circle_moment(radius / 2.0);
  out.cross_check_diff = std::abs(out.value - half);
  out.accuracy_warning = out.cross_check_diff > 1e-8 * (1.0 + std::abs(out.value));
  return out;
}

inline ResidueResult residue(const ExprPtr& expr, const std::string& variable,
                             cplx z0, double radius, double tol = 1e-11) {
  return residue(as_fn(expr, variable), z0, radius, tol);
}

// Principal-part coefficients c_{-m} ... c_{-1}; m detected from pole_order.
inline std::vector<cplx> laurent_head(const CplxFn& f, cplx z0, int max_order,
                                      double radius, double tol = 1e-11) {
  if (max_order > kMaxPoleOrder)
    throw SingularError("laurent_head: max_order above supported maximum");
  int m = pole_order(f, z0, default_probe_radii(radius));
  if (m > max_order) throw SingularError("laurent_head: pole order exceeds max_order");
  std::vector<cplx> head(static_cast<std::size_t>(m), cplx{});
  if (m == 0) return head;
  for (int j = 1; j <= m; ++j) {
    auto g = [&](cplx z) {
      cplx w = z - z0;
      cplx p{1.0, 0.0};
      for (int q = 0; q < j - 1; ++q) p *= w;
      return f(z) * p;
    };
    QuadResult qr = piece_integral(g, PathPiece(Arc{z0, radius, -M_PI, M_PI}), tol);
    if (!qr.converged) throw SingularError("laurent_head: quadrature failure");
    head[static_cast<std::size_t>(m - j)] = qr.value / (2.0 * M_PI * cplx(0.0, 1.0));
  }
  double cmax = 0.0;
  for (const cplx& c : head) cmax = std::max(cmax, std::abs(c));
  for (cplx& c : head)
    if (std::abs(c) < 1e-10 * cmax) c = cplx{};
  return head;
}

inline std::vector<cplx> laurent_head(const ExprPtr& expr, const std::string& variable,
                                      cplx z0, int max_order, double radius,
                                      double tol = 1e-11) {
  return laurent_head(as_fn(expr, variable), z0, max_order, radius, tol);
}

// A fully-described on-path singularity.
struct PoleSpec {
  cplx location;
  int order = 0;
  cplx residue;
  std::vector<cplx> laurent_head;  // c_{-m} ... c_{-1}
  Side side = Side::lower;
};

inline PoleSpec analyze_pole(const CplxFn& f, cplx z0, Side side, double radius) {
  PoleSpec spec;
  spec.location = z0;
  spec.side = side;
  spec.order = pole_order(f, z0, default_probe_radii(radius));
  if (spec.order > 0) {
    spec.laurent_head = laurent_head(f, z0, spec.order, radius);
    spec.residue = spec.laurent_head.back();
  }
  return spec;
}

// ---- eps-family values -------------------------------------------------

struct DivergentPart {
  double rate;  // value grows like coef * eps^{-rate}
  cplx coef;
};

struct PartResult {
  std::optional<cplx> value;
  std::optional<DivergentPart> divergence;
  double error = 0.0;
  bool warning = false;

  bool finite() const { return value.has_value(); }
};

// Geometric default: eps_j = eps0 / 2^j, j = 0..8, eps0 = min gap / 8
// where the gap includes the distance from each pole to the endpoints.
inline std::vector<double> default_eps_sequence(double a, double b,
                                                const std::vector<double>& poles) {
  double gap = b - a;
  std::vector<double> sorted = poles;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    gap = std::min(gap, sorted[i] - a);
    gap = std::min(gap, b - sorted[i]);
    if (i > 0) gap = std::min(gap, sorted[i] - sorted[i - 1]);
  }
  if (gap <= 0.0) throw SingularError("pole at endpoint");
  std::vector<double> eps;
  double e0 = gap / 8.0;
  for (int j = 0; j <= 8; ++j) eps.push_back(e0 / double(1 << j));
  return eps;
}

namespace detail {

// Classify an eps-indexed value family: finite limit via polynomial
// extrapolation, or divergent with a fitted power rate.
inline PartResult extrapolate_eps(const std::vector<double>& eps,
                                  const std::vector<cplx>& vals,
                                  double noise_floor = 1e-12) {
  if (eps.size() < 4 || vals.size() != eps.size())
    throw SingularError("eps sequence too short for extrapolation (need >= 4)");
  const std::size_t n = eps.size();
  PartResult out;

  double scale = 0.0;
  for (std::size_t i = n - 4; i < n; ++i) scale = std::max(scale, std::abs(vals[i]));
  if (scale < std::max(noise_floor, 1e-12)) {
    // below the resolvable level: report the tail mean and its spread
    cplx mean = (vals[n - 1] + vals[n - 2] + vals[n - 3]) / 3.0;
    double spread = 0.0;
    for (std::size_t i = n - 3; i < n; ++i)
      spread = std::max(spread, std::abs(vals[i] - mean));
    out.value = mean;
    out.error = spread;
    return out;
  }

  // log-log slope over the last 4 entries
  std::vector<double> lx, ly;
  for (std::size_t i = n - 4; i < n; ++i) {
    lx.push_back(std::log(eps[i]));
    ly.push_back(std::log(std::max(std::abs(vals[i]), 1e-300)));
  }
  LineFit fit = linefit(lx, ly);
  if (fit.slope < -0.5) {
    DivergentPart d;
    d.rate = std::round(-fit.slope * 2.0) / 2.0;
    // least squares of vals against [eps^-rate, 1]
    cplx s11{}, s12{}, s22{}, b1{}, b2{};
    for (std::size_t i = n - 4; i < n; ++i) {
      double u = std::pow(eps[i], -d.rate);
      s11 += u * u;
      s12 += u;
      s22 += 1.0;
      b1 += u * vals[i];
      b2 += vals[i];
    }
    cplx det = s11 * s22 - s12 * s12;
    d.coef = (b1 * s22 - s12 * b2) / det;
    out.divergence = d;
    out.error = std::abs(std::exp(fit.max_residual) - 1.0) * scale;
    return out;
  }

  const std::size_t take = std::min<std::size_t>(5, n);
  std::vector<double> xs(eps.end() - take, eps.end());
  std::vector<cplx> ys(vals.end() - take, vals.end());
  cplx v3 = polyfit_at_zero(xs, ys, std::min<int>(3, static_cast<int>(take) - 1));
  cplx v2 = polyfit_at_zero(xs, ys, 2);
  out.value = v3;
  out.error = std::abs(v3 - v2);
  return out;
}

inline void check_eps_preconditions(const std::vector<double>& eps) {
  if (eps.size() < 4) throw SingularError("eps sequence too short (need >= 4)");
  for (std::size_t i = 1; i < eps.size(); ++i)
    if (!(eps[i] < eps[i - 1])) throw SingularError("eps sequence must strictly decrease");
  if (eps.front() <= 0.0) throw SingularError("eps must be positive");
}

inline void check_pole_layout(double a, double b, const std::vector<double>& poles,
                              double max_eps) {
  for (double p : poles) {
    if (p <= a || p >= b) throw SingularError("pole at endpoint");
    if (p - max_eps <= a || p + max_eps >= b)
      throw SingularError("eps too large: excision reaches an endpoint");
  }
  std::vector<double> s = poles;
  std::sort(s.begin(), s.end());
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] - s[i - 1] <= 2.0 * max_eps)
      throw SingularError("eps too large: excisions overlap");
}

// Integral over [a,b] with every pole excised symmetrically by eps.
inline cplx excised_integral(const CplxFn& f, double a, double b,
                             std::vector<double> poles, double eps, double quad_tol) {
  std::sort(poles.begin(), poles.end());
  cplx sum{};
  double cursor = a;
  auto g = [&](double x) { return f(cplx(x, 0.0)); };
  for (double p : poles) {
    QuadResult q = integrate_adaptive(g, cursor, p - eps, quad_tol);
    if (!q.converged) throw SingularError("principal value: quadrature failure");
    sum += q.value;
    cursor = p + eps;
  }
  QuadResult q = integrate_adaptive(g, cursor, b, quad_tol);
  if (!q.converged) throw SingularError("principal value: quadrature failure");
  sum += q.value;
  return sum;
}

}  // namespace detail

inline PartResult principal_value(const CplxFn& f, double a, double b,
                                  const std::vector<double>& poles,
                                  std::vector<double> eps_seq = {},
                                  double tol = 1e-8) {
  if (!(a < b)) throw SingularError("principal_value: requires a < b");
  if (eps_seq.empty()) eps_seq = default_eps_sequence(a, b, poles);
  detail::check_eps_preconditions(eps_seq);
  detail::check_pole_layout(a, b, poles, eps_seq.front());
  const double quad_tol = std::max(tol * 1e-2, 1e-13);
  std::vector<cplx> vals;
  for (double e : eps_seq)
    vals.push_back(detail::excised_integral(f, a, b, poles, e, quad_tol));
  return detail::extrapolate_eps(eps_seq, vals);
}

inline PartResult principal_value(const ExprPtr& expr, const std::string& variable,
                                  double a, double b, const std::vector<double>& poles,
                                  std::vector<double> eps_seq = {}, double tol = 1e-8) {
  return principal_value(as_fn(expr, variable), a, b, poles, std::move(eps_seq), tol);
}

inline PartResult bypass_value(const CplxFn& f, double pole, Side side,
                               std::vector<double> eps_seq, double tol = 1e-8) {
  detail::check_eps_preconditions(eps_seq);
  const double quad_tol = std::max(tol * 1e-2, 1e-13);
  std::vector<cplx> vals;
  for (double e : eps_seq) {
    QuadResult q = piece_integral(f, bypass_arc(pole, side, e), quad_tol);
    if (!q.converged) throw SingularError("bypass value: quadrature failure");
    vals.push_back(q.value);
  }
  PartResult out = detail::extrapolate_eps(eps_seq, vals);

  // order-1 cross-check: the limit must be -/+ i*pi*residue
  if (out.finite()) {
    try {
      int m = pole_order(f, cplx(pole, 0.0), default_probe_radii(eps_seq.front()));
      if (m == 1) {
        cplx res = residue(f, cplx(pole, 0.0), eps_seq.front()).value;
        cplx expected = (side == Side::lower ? cplx(0.0, -M_PI) : cplx(0.0, M_PI)) * res;
        if (std::abs(*out.value - expected) > 1e-6 * (1.0 + std::abs(expected)))
          out.warning = true;
      }
    } catch (const SingularError&) {
      out.warning = true;
    }
  }
  return out;
}

inline PartResult bypass_value(const ExprPtr& expr, const std::string& variable,
                               double pole, Side side, std::vector<double> eps_seq,
                               double tol = 1e-8) {
  return bypass_value(as_fn(expr, variable), pole, side, std::move(eps_seq), tol);
}

struct TraceEntry {
  double eps;
  cplx vp;
  cplx vs;
  cplx sum;
};

struct TotalValueResult {
  PartResult vp;
  PartResult vs;
  cplx total;
  bool exists = true;
  double error_estimate = 0.0;
  std::vector<TraceEntry> trace;
};

// Total value: extrapolate the combined family vp(eps) + sum of arcs(eps).
// The combination converges even when both parts diverge (the singular
// contributions cancel); vp/vs are reported separately with divergence
// markers where applicable.
inline TotalValueResult total_value(const CplxFn& f, double a, double b,
                                    const std::vector<PoleOnPath>& poles,
                                    std::vector<double> eps_seq = {},
                                    double tol = 1e-8) {
  if (!(a < b)) throw SingularError("total_value: requires a < b");
  std::vector<double> locs;
  for (const PoleOnPath& p : poles) locs.push_back(p.location);
  if (eps_seq.empty()) eps_seq = default_eps_sequence(a, b, locs);
  detail::check_eps_preconditions(eps_seq);
  detail::check_pole_layout(a, b, locs, eps_seq.front());

  const double quad_tol = std::max(tol * 1e-2, 1e-13);
  std::vector<cplx> vp_vals, vs_vals, sums;
  TotalValueResult out;
  for (double e : eps_seq) {
    cplx vp = detail::excised_integral(f, a, b, locs, e, quad_tol);
    cplx vs{};
    for (const PoleOnPath& p : poles) {
      QuadResult q = piece_integral(f, bypass_arc(p.location, p.side, e), quad_tol);
      if (!q.converged) throw SingularError("total value: arc quadrature failure");
      vs += q.value;
    }
    vp_vals.push_back(vp);
    vs_vals.push_back(vs);
    sums.push_back(vp + vs);
    out.trace.push_back({e, vp, vs, vp + vs});
  }

  // the parts can be large and cancelling; the combined family carries
  // rounding noise proportional to the part magnitudes, which grow as eps
  // shrinks for higher-order poles. Trailing points whose noise exceeds
  // the tolerance budget only pollute the extrapolation, so drop them
  // (at least four points are always kept).
  double sum_scale = 0.0;
  for (const cplx& s : sums) sum_scale = std::max(sum_scale, std::abs(s));
  const double noise_budget = 0.01 * tol * std::max(1.0, sum_scale);
  std::size_t keep = eps_seq.size();
  while (keep > 4) {
    double nj = 2e-16 * (std::abs(vp_vals[keep - 1]) + std::abs(vs_vals[keep - 1]));
    if (nj <= noise_budget) break;
    --keep;
  }
  double part_scale = 0.0;
  for (std::size_t i = 0; i < keep; ++i)
    part_scale = std::max(part_scale, std::abs(vp_vals[i]) + std::abs(vs_vals[i]));
  const double noise_floor = 10.0 * quad_tol * part_scale;

  std::vector<double> eps_used(eps_seq.begin(), eps_seq.begin() + keep);
  std::vector<cplx> sums_used(sums.begin(), sums.begin() + keep);
  PartResult combined = detail::extrapolate_eps(eps_used, sums_used, noise_floor);
  out.vp = detail::extrapolate_eps(eps_seq, vp_vals);
  out.vs = detail::extrapolate_eps(eps_seq, vs_vals);
  if (!combined.finite()) {
    out.exists = false;
    out.total = cplx{};
    out.error_estimate = combined.error;
    return out;
  }
  out.total = *combined.value;
  out.error_estimate = combined.error;

  if (out.vp.finite() != out.vs.finite()) {
    // one side diverges alone: the combination cannot have a limit unless
    // the divergence classifier mislabelled a slow trend; trust the finite
    // combined extrapolation but flag it.
    out.vp.warning = out.vs.warning = true;
  } else if (!out.vp.finite() && !out.vs.finite()) {
    const DivergentPart& dv = *out.vp.divergence;
    const DivergentPart& ds = *out.vs.divergence;
    double cm = std::max(std::abs(dv.coef), std::abs(ds.coef));
    if (dv.rate != ds.rate || std::abs(dv.coef + ds.coef) > 0.01 * cm)
      out.exists = false;
  }
  return out;
}

inline TotalValueResult total_value(const ExprPtr& expr, const std::string& variable,
                                    double a, double b,
                                    const std::vector<PoleOnPath>& poles,
                                    std::vector<double> eps_seq = {},
                                    double tol = 1e-8) {
  return total_value(as_fn(expr, variable), a, b, poles, std::move(eps_seq), tol);
}

// ---- JSON --------------------------------------------------------------

inline nlohmann::json to_json(const PartResult& p) {
  if (p.finite()) return to_json(*p.value);
  return {{"divergent", {{"rate", p.divergence->rate}, {"coef", to_json(p.divergence->coef)}}}};
}

inline nlohmann::json to_json(const TotalValueResult& r) {
  nlohmann::json trace = nlohmann::json::array();
  for (const TraceEntry& t : r.trace)
    trace.push_back({{"eps", t.eps}, {"sum", to_json(t.sum)}});
  return {{"vp", to_json(r.vp)},
          {"vs", to_json(r.vs)},
          {"total", to_json(r.total)},
          {"exists", r.exists},
          {"error", r.error_estimate},
          {"trace", trace}};
}

}  // namespace mero

#endif  // MERO_SINGULAR_HPP

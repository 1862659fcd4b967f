#ifndef MERO_CONVERGENCE_HPP
#define MERO_CONVERGENCE_HPP

// Convergence analysis of the parametric kernel e^{-z(t-nu)} along
// semicircular, detoured, and real-segment paths: pointwise damping
// conditions, the phi semi-interval they induce, and empirical ray limits
// |z| -> infinity at fixed arg z = phi.

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "mero/singular.hpp"

namespace mero {

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RayPath {
  semicircle,    // G: semicircle over [t0, t] in the lower half plane
  detoured,      // G*: [t0,-eps] + lower arc around 0 + [eps, t]
  segment,       // total value over [t0, t], kernel e^{-z(t-tau)} -> f(t)
  segment_left,  // kernel e^{-z(tau-t0)} -> f(t0)
};

inline const char* to_string(RayPath p) {
  switch (p) {
    case RayPath::semicircle: return "semicircle";
    case RayPath::detoured: return "detoured";
    case RayPath::segment: return "segment";
    case RayPath::segment_left: return "segment-left";
  }
  return "?";
}

struct ConvergenceQuery {
  double t;
  double t0;
  double eps = 0.0;  // detour radius for the detoured path
  double phi = 0.0;  // arg z
  std::vector<double> absz_grid = {25, 50, 100, 200, 400, 800};
  RayPath path = RayPath::semicircle;
};

struct DampingValue {
  bool holds;
  double value;  // evaluated left-hand side at |z| = 1
};

// Damping condition at one angle theta of the path parameterization:
// positive value means the kernel decays there as |z| grows.
//   semicircle: Re{ e^{i phi} (1 - e^{i theta}) } * (t - t0)/2
//   detoured:   k + (1 - cos theta) + tan(phi) sin(theta),  k = t/eps - 1
inline DampingValue damping_condition(const ConvergenceQuery& q, double theta) {
  if (!(theta > -M_PI && theta < 0.0))
    throw ConvergenceError("damping condition needs theta in (-pi, 0)");
  if (std::abs(std::abs(q.phi) - M_PI / 2.0) < 1e-12)
    throw ConvergenceError("damping condition undefined for Re z = 0");
  double v;
  if (q.path == RayPath::detoured) {
    if (!(q.eps > 0.0 && q.eps < q.t))
      throw ConvergenceError("detoured path needs 0 < eps < t");
    const double k = q.t / q.eps - 1.0;
    v = k + (1.0 - std::cos(theta)) + std::tan(q.phi) * std::sin(theta);
  } else {
    v = 0.5 * (q.t - q.t0) *
        (std::cos(q.phi) * (1.0 - std::cos(theta)) + std::sin(q.phi) * std::sin(theta));
  }
  return {v > 0.0, v};
}

struct PhiInterval {
  double lo;        // always open
  double hi;
  bool hi_closed;
};

inline constexpr double kZeroLimitEps = 0.0;  // flag value: eps -> 0+ limit

// Semi-interval of phi on which the ray limit reproduces f(t).
inline PhiInterval convergence_semi_interval(double t, double eps,
                                             RayPath path = RayPath::detoured) {
  if (path == RayPath::semicircle) return {-M_PI / 2.0, 0.0, true};
  if (eps == kZeroLimitEps) return {-M_PI / 2.0, M_PI / 2.0, false};
  if (!(eps > 0.0 && eps < t))
    throw ConvergenceError("semi-interval needs 0 < eps < t (or the zero-limit flag)");
  return {-M_PI / 2.0, std::atan(t / eps - 1.0), true};
}

inline bool contains(const PhiInterval& iv, double phi) {
  if (phi <= iv.lo) return false;
  return iv.hi_closed ? phi <= iv.hi : phi < iv.hi;
}

struct RayGridEntry {
  double absz;
  cplx value;
  double relerr;
};

struct RayReport {
  double phi;
  cplx target;
  std::vector<RayGridEntry> grid;
  std::string verdict;  // "converges to f(t)" | "diverges" | "inconclusive"
  double arc_fraction = 0.0;  // detoured path: |arc part| / |total| at largest |z|
};

// z * (path integral of f(nu) e^{-kernel}) for each |z| on the grid,
// compared against the target functional value.
inline RayReport ray_limit_check(const ExprPtr& expr, const ConvergenceQuery& q,
                                 const std::vector<PoleOnPath>& poles = {},
                                 const std::string& variable = "t",
                                 double tol = 1e-9) {
  if (q.absz_grid.size() < 4)
    throw ConvergenceError("|z| grid needs at least 4 entries");
  for (std::size_t i = 1; i < q.absz_grid.size(); ++i)
    if (q.absz_grid[i] <= q.absz_grid[i - 1])
      throw ConvergenceError("|z| grid must be increasing");
  if (!(q.t > q.t0)) throw ConvergenceError("requires t > t0");

  CplxFn f = as_fn(expr, variable);
  const double target_at = q.path == RayPath::segment_left ? q.t0 : q.t;
  RayReport rep;
  rep.phi = q.phi;
  rep.target = f(cplx(target_at, 0.0));

  for (double az : q.absz_grid) {
    const cplx z = az * std::polar(1.0, q.phi);
    auto kernel = [&](cplx nu) {
      cplx ex = q.path == RayPath::segment_left ? -z * (nu - q.t0) : -z * (q.t - nu);
      // exp overflows past ~709; the ray genuinely diverges there
      if (ex.real() > 700.0) return cplx(HUGE_VAL, HUGE_VAL);
      return std::exp(ex);
    };
    auto g = [&](cplx nu) { return f(nu) * kernel(nu); };

    cplx value;
    bool ok = true;
    if (q.path == RayPath::semicircle) {
      Arc arc{cplx(0.5 * (q.t0 + q.t), 0.0), 0.5 * (q.t - q.t0), -M_PI, 0.0};
      QuadResult r = piece_integral(g, PathPiece(arc), tol);
      ok = r.converged;
      value = z * r.value;
    } else if (q.path == RayPath::detoured) {
      if (!(q.eps > 0.0 && q.t0 < -q.eps && q.eps < q.t))
        throw ConvergenceError("detoured path needs t0 < -eps < eps < t");
      QuadResult left = integrate_adaptive(
          [&](double x) { return g(cplx(x, 0.0)); }, q.t0, -q.eps, tol);
      QuadResult arc =
          piece_integral(g, PathPiece(Arc{cplx(0, 0), q.eps, -M_PI, 0.0}), tol);
      QuadResult right = integrate_adaptive(
          [&](double x) { return g(cplx(x, 0.0)); }, q.eps, q.t, tol);
      ok = left.converged && arc.converged && right.converged;
      value = z * (left.value + arc.value + right.value);
      double total = std::abs(value);
      if (total > 0.0) rep.arc_fraction = std::abs(z * arc.value) / total;
    } else {
      try {
        TotalValueResult tv = total_value(g, q.t0, q.t, poles, {}, std::max(tol, 1e-10));
        ok = tv.exists;
        value = z * tv.total;
      } catch (const SingularError&) {
        // kernel overflow along the ray: the family genuinely blows up
        ok = false;
        value = cplx(HUGE_VAL, HUGE_VAL);
      }
    }
    double relerr =
        ok && std::isfinite(value.real()) && std::isfinite(value.imag())
            ? std::abs(value - rep.target) / std::max(1.0, std::abs(rep.target))
            : HUGE_VAL;
    rep.grid.push_back({az, value, relerr});
  }

  const std::size_t n = rep.grid.size();
  const double last = rep.grid[n - 1].relerr;
  const double prev = rep.grid[n - 2].relerr;
  if (last < 1e-9 || (last <= 1e-2 && last <= 0.8 * prev + 1e-15)) {
    rep.verdict = "converges to f(t)";
  } else if (!std::isfinite(last) || last > rep.grid[0].relerr || last > 1.0) {
    rep.verdict = "diverges";
  } else {
    rep.verdict = "inconclusive";
  }
  return rep;
}

inline nlohmann::json to_json(const RayReport& r) {
  nlohmann::json grid = nlohmann::json::array();
  for (const RayGridEntry& e : r.grid)
    grid.push_back({{"absz", e.absz}, {"value", to_json(e.value)}, {"relerr", e.relerr}});
  return {{"phi", r.phi},
          {"target", to_json(r.target)},
          {"grid", grid},
          {"verdict", r.verdict},
          {"arc_fraction", r.arc_fraction}};
}

}  // namespace mero

#endif  // MERO_CONVERGENCE_HPP

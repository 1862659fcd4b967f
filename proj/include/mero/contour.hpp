#ifndef MERO_CONTOUR_HPP
#define MERO_CONTOUR_HPP

// Integration paths: real segments, circular arcs, and composites with
// by-pass detours around on-path singularities.

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mero/expr.hpp"
#include "mero/quadrature.hpp"

namespace mero {

struct ContourError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Side { lower, upper };

inline const char* to_string(Side s) { return s == Side::lower ? "lower" : "upper"; }

inline Side side_from_string(const std::string& s) {
  if (s == "lower") return Side::lower;
  if (s == "upper") return Side::upper;
  throw ContourError("unknown side '" + s + "'");
}

struct Segment {
  double a;
  double b;
};

struct Arc {
  cplx center;
  double radius;
  double theta0;
  double theta1;
};

class PathPiece {
 public:
  PathPiece(Segment s) : piece_(s) {}
  PathPiece(Arc a) : piece_(validate(a)) {}

  bool is_segment() const { return std::holds_alternative<Segment>(piece_); }
  const Segment& segment() const { return std::get<Segment>(piece_); }
  const Arc& arc() const { return std::get<Arc>(piece_); }

  cplx start() const {
    if (is_segment()) return {segment().a, 0.0};
    const Arc& a = arc();
    return a.center + a.radius * std::polar(1.0, a.theta0);
  }
  cplx end() const {
    if (is_segment()) return {segment().b, 0.0};
    const Arc& a = arc();
    return a.center + a.radius * std::polar(1.0, a.theta1);
  }

 private:
  static Arc validate(const Arc& a) {
    if (a.radius <= 0.0) throw ContourError("arc radius must be positive");
    if (std::abs(a.theta1 - a.theta0) > 2.0 * M_PI + 1e-12)
      throw ContourError("arc sweep exceeds 2*pi");
    return a;
  }
  std::variant<Segment, Arc> piece_;
};

inline constexpr double kConnectTol = 1e-12;

class Contour {
 public:
  Contour() = default;
  explicit Contour(std::vector<PathPiece> pieces) : pieces_(std::move(pieces)) {
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
      if (std::abs(pieces_[i].start() - pieces_[i - 1].end()) > kConnectTol)
        throw ContourError("contour pieces " + std::to_string(i - 1) + " and " +
                           std::to_string(i) + " are not connected");
    }
  }

  const std::vector<PathPiece>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }
  bool empty() const { return pieces_.empty(); }

  bool closed() const {
    if (pieces_.empty()) return false;
    return std::abs(pieces_.back().end() - pieces_.front().start()) <= kConnectTol;
  }

  Contour concat(const Contour& other) const {
    std::vector<PathPiece> all = pieces_;
    all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
    return Contour(std::move(all));
  }

 private:
  std::vector<PathPiece> pieces_;
};

// A single by-pass arc of radius eps about a real pole location, traversed
// left-to-right along the real axis. Side is named by the value it
// produces on a simple pole: lower gives -i*pi*residue (theta from pi to
// 0, the z - i0 prescription), upper gives +i*pi*residue (theta from -pi
// to 0).
inline PathPiece bypass_arc(double pole, Side side, double eps) {
  if (side == Side::lower) return Arc{cplx(pole, 0.0), eps, M_PI, 0.0};
  return Arc{cplx(pole, 0.0), eps, -M_PI, 0.0};
}

struct PoleOnPath {
  double location;
  Side side = Side::lower;
};

// Segment [a,b] with semicircular detours around each interior pole.
// Piece count is 2*npoles + 1.
inline Contour build_detoured_segment(double a, double b,
                                      std::vector<PoleOnPath> poles, double eps) {
  if (!(a < b)) throw ContourError("segment requires a < b");
  if (eps <= 0.0) throw ContourError("detour radius must be positive");
  std::sort(poles.begin(), poles.end(),
            [](const PoleOnPath& x, const PoleOnPath& y) { return x.location < y.location; });
  for (const PoleOnPath& p : poles) {
    if (p.location <= a || p.location >= b)
      throw ContourError("pole at endpoint or outside segment");
    if (p.location - eps < a || p.location + eps > b)
      throw ContourError("detour radius reaches a segment endpoint");
  }
  for (std::size_t i = 1; i < poles.size(); ++i) {
    if (poles[i].location - poles[i - 1].location <= 2.0 * eps)
      throw ContourError("overlapping detours: eps too large for pole gap");
  }
  std::vector<PathPiece> pieces;
  double cursor = a;
  for (const PoleOnPath& p : poles) {
    pieces.emplace_back(Segment{cursor, p.location - eps});
    pieces.emplace_back(bypass_arc(p.location, p.side, eps));
    cursor = p.location + eps;
  }
  pieces.emplace_back(Segment{cursor, b});
  return Contour(std::move(pieces));
}

// Integral of f along one piece.
template <class F>
QuadResult piece_integral(F&& f, const PathPiece& piece, double tol) {
  if (piece.is_segment()) {
    const Segment& s = piece.segment();
    return integrate_adaptive([&](double x) { return f(cplx(x, 0.0)); }, s.a, s.b, tol);
  }
  const Arc& a = piece.arc();
  auto g = [&](double th) {
    cplx z = a.center + a.radius * std::polar(1.0, th);
    cplx dz = a.radius * cplx(0.0, 1.0) * std::polar(1.0, th);
    return f(z) * dz;
  };
  return integrate_adaptive(g, a.theta0, a.theta1, tol);
}

using CplxFn = std::function<cplx(cplx)>;

template <class F>
QuadResult contour_integral(F&& f, const Contour& path, double tol) {
  QuadResult total;
  for (const PathPiece& p : path.pieces()) {
    QuadResult r = piece_integral(f, p, tol);
    total.value += r.value;
    total.error += r.error;
    total.panels += r.panels;
    total.converged = total.converged && r.converged;
  }
  return total;
}

// Sum over pieces of the integral of f(z(s)) z'(s) ds by adaptive
// quadrature; the error field carries the summed panel estimates.
inline QuadResult path_integral(const Expr& expr, const Contour& path,
                                const std::string& variable, double tol = 1e-10) {
  Bindings b;
  auto f = [&](cplx z) {
    b.set(variable, z);
    return eval(expr, b);
  };
  return contour_integral(f, path, tol);
}

inline QuadResult path_integral(const ExprPtr& expr, const Contour& path,
                                const std::string& variable, double tol = 1e-10) {
  return path_integral(*expr, path, variable, tol);
}

// ---- JSON serialization ------------------------------------------------

inline nlohmann::json to_json(const cplx& z) {
  return {{"re", z.real()}, {"im", z.imag()}};
}

inline nlohmann::json to_json(const PathPiece& p) {
  if (p.is_segment())
    return {{"kind", "segment"}, {"a", p.segment().a}, {"b", p.segment().b}};
  const Arc& a = p.arc();
  return {{"kind", "arc"},
          {"center", to_json(a.center)},
          {"radius", a.radius},
          {"theta0", a.theta0},
          {"theta1", a.theta1}};
}

inline nlohmann::json to_json(const Contour& c) {
  nlohmann::json arr = nlohmann::json::array();
  for (const PathPiece& p : c.pieces()) arr.push_back(to_json(p));
  return arr;
}

inline Contour contour_from_json(const nlohmann::json& j) {
  std::vector<PathPiece> pieces;
  for (const auto& pj : j) {
    const std::string kind = pj.at("kind").get<std::string>();
    if (kind == "segment") {
      pieces.emplace_back(Segment{pj.at("a").get<double>(), pj.at("b").get<double>()});
    } else if (kind == "arc") {
      pieces.emplace_back(Arc{
          cplx(pj.at("center").at("re").get<double>(), pj.at("center").at("im").get<double>()),
          pj.at("radius").get<double>(), pj.at("theta0").get<double>(),
          pj.at("theta1").get<double>()});
    } else {
      throw ContourError("unknown piece kind '" + kind + "'");
    }
  }
  return Contour(std::move(pieces));
}

}  // namespace mero

#endif  // MERO_CONTOUR_HPP

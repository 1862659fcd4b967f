// Command-line front-end: every library operation mapped onto one
// subcommand, JSON/CSV output, plot-ready partial-sum tables.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mero/convergence.hpp"
#include "mero/fourier.hpp"
#include "mero/verify.hpp"

namespace {

using mero::cplx;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// numeric flags accept pi-expressions: "-pi", "pi/2", "0.75", "2*pi/3"
double parse_num(const std::string& text) {
  cplx v;
  try {
    mero::Bindings none;
    v = mero::eval(mero::parse(text), none);
  } catch (const mero::ParseError&) {
    throw UsageError("cannot read number '" + text + "'");
  } catch (const mero::EvalError&) {
    throw UsageError("cannot read number '" + text + "'");
  }
  if (std::abs(v.imag()) > 1e-15)
    throw UsageError("numeric flag '" + text + "' is not real");
  return v.real();
}

std::vector<mero::PoleOnPath> parse_poles(const std::vector<std::string>& specs) {
  std::vector<mero::PoleOnPath> poles;
  for (const std::string& s : specs) {
    auto colon = s.rfind(':');
    if (colon == std::string::npos)
      throw UsageError("pole spec '" + s + "' must be LOC:SIDE");
    mero::PoleOnPath p;
    p.location = parse_num(s.substr(0, colon));
    try {
      p.side = mero::side_from_string(s.substr(colon + 1));
    } catch (const mero::ContourError& e) {
      throw UsageError(e.what());
    }
    poles.push_back(p);
  }
  return poles;
}

void check_poles_interior(const std::vector<mero::PoleOnPath>& poles, double a,
                          double b) {
  for (const mero::PoleOnPath& p : poles)
    if (p.location <= a || p.location >= b)
      throw UsageError("pole at endpoint or outside the interval");
}

void emit(const std::string& out_path, const std::string& payload) {
  const char* tail = (!payload.empty() && payload.back() == '\n') ? "" : "\n";
  if (out_path.empty()) {
    std::cout << payload << tail;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot open output file '" + out_path + "'");
  f << payload << tail;
}

std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct CommonFlags {
  std::string expr;
  std::string from_s = "-pi", to_s = "pi";
  std::vector<std::string> pole_specs;
  double tol = 1e-8;
  double eps = 0.0;  // 0 = module default
  int kmax = 64;
  std::string method = "abel";
  std::string mode = "vt";
  std::string at_s;
  std::string phi_s = "0";
  std::string out_path;
  std::string format = "json";
};

int run_integrate(const CommonFlags& fl) {
  const double a = parse_num(fl.from_s), b = parse_num(fl.to_s);
  auto poles = parse_poles(fl.pole_specs);
  check_poles_interior(poles, a, b);
  auto e = mero::parse(fl.expr);
  std::vector<double> eps_seq;
  if (fl.eps > 0.0)
    for (int j = 0; j <= 8; ++j) eps_seq.push_back(fl.eps / double(1 << j));

  nlohmann::json j;
  if (fl.mode == "vp") {
    std::vector<double> locs;
    for (auto& p : poles) locs.push_back(p.location);
    mero::PartResult r = mero::principal_value(e, "t", a, b, locs, eps_seq, fl.tol);
    j = {{"mode", "vp"}, {"value", mero::to_json(r)}, {"error", r.error}};
  } else if (fl.mode == "vs") {
    if (poles.empty()) throw UsageError("vs mode needs at least one --pole");
    auto seq = eps_seq;
    if (seq.empty()) {
      std::vector<double> locs;
      for (auto& p : poles) locs.push_back(p.location);
      seq = mero::default_eps_sequence(a, b, locs);
    }
    cplx total{};
    nlohmann::json parts = nlohmann::json::array();
    bool all_finite = true;
    for (auto& p : poles) {
      mero::PartResult r =
          mero::bypass_value(e, "t", p.location, p.side, seq, fl.tol);
      parts.push_back({{"pole", p.location},
                       {"side", mero::to_string(p.side)},
                       {"value", mero::to_json(r)}});
      if (r.finite()) total += *r.value; else all_finite = false;
    }
    j = {{"mode", "vs"}, {"parts", parts}};
    if (all_finite) j["value"] = mero::to_json(total);
  } else if (fl.mode == "vt") {
    mero::TotalValueResult r = mero::total_value(e, "t", a, b, poles, eps_seq, fl.tol);
    j = mero::to_json(r);
    j["mode"] = "vt";
    if (fl.format == "csv") {
      std::ostringstream os;
      os << "eps,sum_re,sum_im\n";
      for (auto& tr : r.trace)
        os << csv_num(tr.eps) << "," << csv_num(tr.sum.real()) << ","
           << csv_num(tr.sum.imag()) << "\n";
      emit(fl.out_path, os.str());
      return 0;
    }
  } else {
    throw UsageError("unknown mode '" + fl.mode + "' (vp|vs|vt)");
  }
  emit(fl.out_path, j.dump(2));
  return 0;
}

int run_fourier(const CommonFlags& fl) {
  const double a = parse_num(fl.from_s), b = parse_num(fl.to_s);
  auto poles = parse_poles(fl.pole_specs);
  check_poles_interior(poles, a, b);
  auto e = mero::parse(fl.expr);
  mero::SeriesCoefficients c =
      mero::fourier_coefficients(e, poles, fl.kmax, a, b, b - a, "t", fl.tol);
  if (fl.format == "csv") {
    std::ostringstream os;
    os << "k,A_re,A_im,B_re,B_im\n";
    os << "0," << csv_num(c.a0_half.real()) << "," << csv_num(c.a0_half.imag())
       << ",0,0\n";
    for (int k = 1; k <= c.k_max; ++k)
      os << k << "," << csv_num(c.A[k - 1].real()) << "," << csv_num(c.A[k - 1].imag())
         << "," << csv_num(c.B[k - 1].real()) << "," << csv_num(c.B[k - 1].imag())
         << "\n";
    emit(fl.out_path, os.str());
  } else {
    nlohmann::json j = mero::to_json(c);
    if (!fl.at_s.empty()) {
      mero::SeriesMethod sm = mero::SeriesMethod::abel;
      int order = 1;
      if (fl.method == "partial") sm = mero::SeriesMethod::cauchy;
      else if (fl.method.rfind("cesaro", 0) == 0) {
        sm = mero::SeriesMethod::cesaro;
        auto colon = fl.method.find(':');
        if (colon != std::string::npos) order = std::stoi(fl.method.substr(colon + 1));
      } else if (fl.method != "abel") {
        throw UsageError("unknown method '" + fl.method + "' (partial|cesaro:m|abel)");
      }
      mero::SummationResult sv =
          mero::series_value(c, parse_num(fl.at_s), sm, order, nullptr, fl.tol);
      j["series_value"] = mero::to_json(sv);
    }
    emit(fl.out_path, j.dump(2));
  }
  return 0;
}

int run_sum(const CommonFlags& fl) {
  auto e = mero::parse(fl.expr);
  mero::Bindings b;
  mero::TermFn terms = [&](std::int64_t k) {
    b.set("k", cplx(double(k), 0.0));
    return mero::eval(e, b);
  };
  const std::int64_t K = std::max(16, fl.kmax);
  mero::SummationResult r;
  if (fl.method == "partial") {
    r = mero::cauchy_limit(terms, K, fl.tol);
  } else if (fl.method.rfind("cesaro", 0) == 0) {
    int order = 1;
    auto colon = fl.method.find(':');
    if (colon != std::string::npos) order = std::stoi(fl.method.substr(colon + 1));
    r = mero::cesaro_sum(terms, order, K, fl.tol);
  } else if (fl.method == "abel") {
    r = mero::abel_sum(terms, {}, mero::kAbelTermCap, fl.tol);
  } else if (fl.method == "wynn") {
    mero::WynnResult w =
        mero::verifier::wynn_partial_sums(terms, int(std::min<std::int64_t>(K, 200)));
    r.method = "wynn";
    r.value = w.value;
    r.error_estimate = w.error_estimate;
    r.status = mero::SumStatus::summable;
  } else {
    throw UsageError("unknown method '" + fl.method + "' (partial|cesaro:m|abel|wynn)");
  }
  emit(fl.out_path, mero::to_json(r).dump(2));
  return 0;
}

int run_converge(const CommonFlags& fl, const std::string& path_kind) {
  mero::ConvergenceQuery q;
  q.t0 = parse_num(fl.from_s);
  q.t = fl.at_s.empty() ? parse_num(fl.to_s) : parse_num(fl.at_s);
  q.eps = fl.eps;
  q.phi = parse_num(fl.phi_s);
  if (path_kind == "semicircle") q.path = mero::RayPath::semicircle;
  else if (path_kind == "detoured") q.path = mero::RayPath::detoured;
  else if (path_kind == "segment") q.path = mero::RayPath::segment;
  else if (path_kind == "segment-left") q.path = mero::RayPath::segment_left;
  else throw UsageError("unknown path '" + path_kind + "'");

  auto poles = parse_poles(fl.pole_specs);
  auto e = mero::parse(fl.expr);
  mero::RayReport rep = mero::ray_limit_check(e, q, poles, "t", fl.tol);
  nlohmann::json j = mero::to_json(rep);
  if (q.path == mero::RayPath::detoured || q.path == mero::RayPath::semicircle) {
    mero::PhiInterval iv = mero::convergence_semi_interval(
        q.t, q.path == mero::RayPath::semicircle ? 0.1 : q.eps, q.path);
    j["semi_interval"] = {{"lo", iv.lo}, {"hi", iv.hi}, {"hi_closed", iv.hi_closed},
                          {"contains_phi", mero::contains(iv, q.phi)}};
    if (std::abs(std::abs(q.phi) - M_PI / 2.0) > 1e-12) {
      mero::DampingValue dv = mero::damping_condition(q, -M_PI / 2.0);
      j["damping_at_theta_mid"] = {{"holds", dv.holds}, {"value", dv.value}};
    }
  }
  if (fl.format == "csv") {
    std::ostringstream os;
    os << "absz,value_re,value_im,relerr\n";
    for (auto& g : rep.grid)
      os << csv_num(g.absz) << "," << csv_num(g.value.real()) << ","
         << csv_num(g.value.imag()) << "," << csv_num(g.relerr) << "\n";
    emit(fl.out_path, os.str());
  } else {
    emit(fl.out_path, j.dump(2));
  }
  return 0;
}

int run_verify(const std::string& check_id, const std::string& profile_name,
               const CommonFlags& fl) {
  mero::ToleranceProfile profile = mero::ToleranceProfile::default_;
  if (profile_name == "strict") profile = mero::ToleranceProfile::strict;
  else if (profile_name != "default")
    throw UsageError("unknown profile '" + profile_name + "' (default|strict)");
  std::vector<mero::CheckReport> reports;
  if (check_id.empty() || check_id == "all") {
    reports = mero::run_all(profile);
  } else {
    // accept unique prefixes: "eq47" resolves to "eq47_total_zero"
    std::string resolved;
    for (const auto& [name, fn] : mero::verifier::registry()) {
      if (name == check_id) { resolved = name; break; }
      if (name.rfind(check_id, 0) == 0) {
        if (!resolved.empty()) throw UsageError("check id '" + check_id + "' is ambiguous");
        resolved = name;
      }
    }
    if (resolved.empty()) throw UsageError("unknown check id '" + check_id + "'");
    reports.push_back(mero::run_check(resolved, nlohmann::json::object(), profile));
  }
  if (fl.format == "csv") {
    std::ostringstream os;
    os << "id,status,abs_error,runtime_seconds\n";
    for (auto& r : reports)
      os << r.id << "," << r.status << "," << csv_num(r.abs_error) << ","
         << csv_num(r.runtime_seconds) << "\n";
    emit(fl.out_path, os.str());
  } else {
    emit(fl.out_path, mero::report_json(reports).dump(2));
  }
  for (auto& r : reports)
    if (r.status == "oracle-failure") return 1;
  return 0;
}

int run_plot(const CommonFlags& fl, const std::string& k_list, int points) {
  const double a = parse_num(fl.from_s), b = parse_num(fl.to_s);
  auto poles = parse_poles(fl.pole_specs);
  check_poles_interior(poles, a, b);
  std::vector<int> Ks;
  std::stringstream ss(k_list);
  std::string tok;
  while (std::getline(ss, tok, ',')) Ks.push_back(std::stoi(tok));
  if (Ks.empty()) throw UsageError("--kmax needs at least one K value");
  int kmax = *std::max_element(Ks.begin(), Ks.end());

  auto e = mero::parse(fl.expr);
  mero::SeriesCoefficients c =
      mero::fourier_coefficients(e, poles, kmax, a, b, b - a, "t", fl.tol);
  mero::Bindings bind;
  std::ostringstream os;
  os << "t";
  for (int K : Ks) os << ",partial_sum_" << K;
  os << ",target\n";
  for (int i = 0; i <= points; ++i) {
    double t = a + (b - a) * double(i) / double(points);
    os << csv_num(t);
    for (int K : Ks) {
      cplx s = mero::series_partial_sum(c, t, K);
      os << "," << csv_num(s.real());
    }
    bind.set("t", cplx(t, 0.0));
    double target;
    try {
      target = mero::eval(e, bind).real();
    } catch (const mero::EvalError&) {
      target = std::numeric_limits<double>::quiet_NaN();
    }
    os << "," << csv_num(target) << "\n";
  }
  emit(fl.out_path, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"total-value integration, trigonometric series, and identity checks "
               "for meromorphic functions with poles on the path"};
  app.require_subcommand(1);

  CommonFlags fl;
  std::string path_kind = "segment";
  std::string check_id, profile_name = "default";
  std::string k_list = "16";
  int points = 200;

  auto add_common = [&](CLI::App* sub, bool needs_expr) {
    if (needs_expr)
      sub->add_option("--expr", fl.expr, "expression in t (or k for sum)")->required();
    sub->add_option("--from", fl.from_s, "left endpoint (pi-expressions ok)");
    sub->add_option("--to", fl.to_s, "right endpoint");
    sub->add_option("--pole", fl.pole_specs, "pole as LOC:SIDE, repeatable");
    sub->add_option("--eps", fl.eps, "largest detour radius of the eps family");
    sub->add_option("--tol", fl.tol, "tolerance");
    sub->add_option("--out", fl.out_path, "output path (default stdout)");
    sub->add_option("--format", fl.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* sc_parse = app.add_subcommand("parse", "parse, canonicalize, evaluate");
  add_common(sc_parse, true);
  sc_parse->add_option("--at", fl.at_s, "evaluate at this t");

  CLI::App* sc_int = app.add_subcommand("integrate", "vp / vs / vt of an improper integral");
  add_common(sc_int, true);
  sc_int->add_option("--mode", fl.mode, "vp|vs|vt");

  CLI::App* sc_fourier = app.add_subcommand("fourier", "total-value series coefficients");
  add_common(sc_fourier, true);
  sc_fourier->add_option("--kmax", fl.kmax, "number of harmonics");
  sc_fourier->add_option("--at", fl.at_s, "also evaluate the series at this t");
  sc_fourier->add_option("--method", fl.method, "series evaluation: partial|cesaro:m|abel");

  CLI::App* sc_sum = app.add_subcommand("sum", "summability of a series u_k");
  add_common(sc_sum, true);
  sc_sum->add_option("--method", fl.method, "partial|cesaro:m|abel|wynn");
  sc_sum->add_option("--kmax", fl.kmax, "partial-sum horizon");

  CLI::App* sc_conv = app.add_subcommand("converge", "parametric-kernel ray limits");
  add_common(sc_conv, true);
  sc_conv->add_option("--at", fl.at_s, "evaluation point t (default --to)");
  sc_conv->add_option("--phi", fl.phi_s, "argument of z");
  sc_conv->add_option("--path", path_kind, "semicircle|detoured|segment|segment-left");

  CLI::App* sc_verify = app.add_subcommand("verify", "run identity checks");
  add_common(sc_verify, false);
  sc_verify->add_option("--check", check_id, "check id (default: all)");
  sc_verify->add_option("--profile", profile_name, "default|strict");

  CLI::App* sc_plot = app.add_subcommand("plot", "CSV of partial sums vs the target");
  add_common(sc_plot, true);
  sc_plot->add_option("--kmax", k_list, "comma-separated partial-sum orders");
  sc_plot->add_option("--points", points, "grid resolution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sc_parse->parsed()) {
      auto e = mero::parse(fl.expr);
      nlohmann::json j = {{"canonical", mero::print(e)}};
      if (!fl.at_s.empty()) {
        mero::Bindings b;
        b.set("t", cplx(parse_num(fl.at_s), 0.0));
        j["value"] = mero::to_json(mero::eval(e, b));
      }
      emit(fl.out_path, j.dump(2));
      return 0;
    }
    if (sc_int->parsed()) return run_integrate(fl);
    if (sc_fourier->parsed()) return run_fourier(fl);
    if (sc_sum->parsed()) return run_sum(fl);
    if (sc_conv->parsed()) return run_converge(fl, path_kind);
    if (sc_verify->parsed()) return run_verify(check_id, profile_name, fl);
    if (sc_plot->parsed()) return run_plot(fl, k_list, points);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    nlohmann::json err = {{"error", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 2;
}

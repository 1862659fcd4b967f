// Acceptance gate: every criterion prints one PASS/FAIL line; the exit
// code is the number of failures.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "mero/verify.hpp"
#include "oracles.hpp"

using mero::cplx;
using mero::Side;

namespace {

int failures = 0;

struct Criterion {
  int id;
  const char* label;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void report(bool ok, const std::string& note = {}) {
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %2d  %-58s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", id, label, secs,
                note.empty() ? "" : "  -- ", note.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

mero::CplxFn odd_kernel() {
  return [](cplx z) { return std::sin(z) / (2.0 * (1.0 - std::cos(z))); };
}

bool check_registry(const char* check_id, double tol, std::string& note,
                    const char* want_status = "pass") {
  mero::CheckReport r = mero::run_check(check_id);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s: %s, err %.2e", check_id, r.status.c_str(),
                r.abs_error);
  if (!note.empty()) note += "; ";
  note += buf;
  return r.status == want_status && r.abs_error <= tol;
}

}  // namespace

int main() {
  {  // 1: principal value of the odd kernel vanishes
    Criterion c{1, "principal value of sin t/(2(1-cos t)) on [-pi,pi] is 0"};
    mero::PartResult r = mero::principal_value(odd_kernel(), -M_PI, M_PI, {0.0});
    c.report(r.finite() && std::abs(*r.value) <= 1e-8);
  }
  {  // 2: by-pass values
    Criterion c{2, "by-pass values are -i*pi (lower) and +i*pi (upper)"};
    auto eps = mero::default_eps_sequence(-M_PI, M_PI, {0.0});
    auto lo = mero::bypass_value(odd_kernel(), 0.0, Side::lower, eps);
    auto hi = mero::bypass_value(odd_kernel(), 0.0, Side::upper, eps);
    c.report(lo.finite() && hi.finite() &&
             std::abs(*lo.value - cplx(0.0, -M_PI)) <= 1e-8 &&
             std::abs(*hi.value - cplx(0.0, M_PI)) <= 1e-8);
  }
  mero::SeriesCoefficients t1;
  {  // 3: odd-kernel coefficient table
    Criterion c{3, "odd kernel: B_k=1, A_k=-i for k=1..20"};
    auto e = mero::parse("sin(t)/(2*(1-cos(t)))");
    t1 = mero::fourier_coefficients(e, {{0.0, Side::lower}}, 20);
    bool ok = true;
    for (int k = 1; k <= 20; ++k) {
      ok = ok && std::abs(t1.B[k - 1] - cplx(1.0, 0.0)) <= 1e-7 &&
           std::abs(t1.A[k - 1].imag() + 1.0) <= 1e-7 &&
           std::abs(t1.A[k - 1].real()) <= 1e-7;
    }
    c.report(ok);
  }
  mero::SeriesCoefficients t2;
  {  // 4: even-kernel total value and coefficient table
    Criterion c{4, "even kernel: total 0, A_k=-k, B_k=-ik for k=1..20"};
    auto e = mero::parse("1/(2*(1-cos(t)))");
    mero::TotalValueResult tv =
        mero::total_value(e, "t", -M_PI, M_PI, {{0.0, Side::lower}});
    t2 = mero::fourier_coefficients(e, {{0.0, Side::lower}}, 20);
    bool ok = tv.exists && std::abs(tv.total) <= 1e-6;
    for (int k = 1; k <= 20; ++k) {
      ok = ok && std::abs(t2.A[k - 1] - cplx(-double(k), 0.0)) <= 1e-6 * double(k) &&
           std::abs(t2.B[k - 1] - cplx(0.0, -double(k))) <= 1e-6 * double(k);
    }
    c.report(ok);
  }
  {  // 5: difference identity
    Criterion c{5, "A_k - A_{k+1} = 1 for k=1..19"};
    bool ok = true;
    for (int k = 1; k <= 19; ++k)
      ok = ok && std::abs(t2.A[k - 1] - t2.A[k] - cplx(1.0, 0.0)) <= 1e-6;
    c.report(ok);
  }
  {  // 6: Abel sum of the sine series
    Criterion c{6, "Abel sum of sum sin(kt) = (1/2)cot(t/2) on the t-grid"};
    bool ok = true;
    for (double t : {0.5, 1.0, 2.0, 3.0}) {
      auto s = mero::abel_sum(
          [t](std::int64_t k) { return cplx(std::sin(double(k) * t), 0.0); }, {},
          mero::kAbelTermCap, 1e-9);
      ok = ok && s.value.has_value() &&
           std::abs(*s.value - cplx(oracle::half_cot(t), 0.0)) <= 1e-6;
    }
    c.report(ok);
  }
  {  // 7: Abel sum of the derivative series
    Criterion c{7, "Abel sum of sum k cos(kt) = -1/(2(1-cos t)) on the t-grid"};
    bool ok = true;
    for (double t : {0.5, 1.0, 2.0, 3.0}) {
      auto s = mero::abel_sum(
          [t](std::int64_t k) { return cplx(double(k) * std::cos(double(k) * t), 0.0); },
          {}, mero::kAbelTermCap, 1e-9);
      ok = ok && s.value.has_value() &&
           std::abs(*s.value - cplx(-1.0 / (2.0 * (1.0 - std::cos(t))), 0.0)) <= 1e-5;
    }
    c.report(ok);
  }
  {  // 8: endpoint sums, Abel and Cesaro
    Criterion c{8, "Abel sums -1/2 and -1/4; Cesaro (C,1)/(C,2) cross-checks"};
    auto alt = [](std::int64_t k) { return cplx(k % 2 ? -1.0 : 1.0, 0.0); };
    auto kalt = [](std::int64_t k) {
      return cplx(double(k) * (k % 2 ? -1.0 : 1.0), 0.0);
    };
    auto a1 = mero::abel_sum(alt, {}, mero::kAbelTermCap, 1e-10);
    auto a2 = mero::abel_sum(kalt, {}, mero::kAbelTermCap, 1e-10);
    auto c1 = mero::cesaro_sum(alt, 1, 2000000, 1e-6);
    auto c2 = mero::cesaro_sum(kalt, 2, 8000000, 1e-6);
    bool ok = a1.value && std::abs(*a1.value - cplx(-0.5, 0.0)) <= 1e-9 &&
              a2.value && std::abs(*a2.value - cplx(-0.25, 0.0)) <= 1e-9 &&
              c1.value && std::abs(*c1.value - *a1.value) <= 1e-6 &&
              c2.value && std::abs(*c2.value - *a2.value) <= 1e-6;
    c.report(ok);
  }
  {  // 9: quadrature identity
    Criterion c{9, "arc quadrature matches the closed form (n=1..3, 3 angles)"};
    std::string note;
    c.report(check_registry("eq6_quadrature_identity", 1e-9, note), note);
  }
  {  // 10: by-pass closed form and circle-pole sum to zero
    Criterion c{10, "arc closed form (1e-8) and circle-pole total zero (1e-6)"};
    std::string note;
    bool ok = check_registry("eq5_bypass_closed_form", 1e-8, note) &&
              check_registry("eq2_7_circle_pole", 1e-6, note);
    c.report(ok, note);
  }
  {  // 11: Wynn-accelerated alternating sine series
    Criterion c{11, "Wynn: sum (-1)^k sin(kt)/k = -t/2 at t in {0.5,1,2.5}"};
    bool ok = true;
    for (double t : {0.5, 1.0, 2.5}) {
      auto w = mero::verifier::wynn_partial_sums(
          [t](std::int64_t k) {
            return cplx(std::pow(-1.0, double(k)) * std::sin(double(k) * t) / double(k),
                        0.0);
          },
          150);
      ok = ok && std::abs(w.value - cplx(-t / 2.0, 0.0)) <= 1e-6;
    }
    c.report(ok);
  }
  {  // 12: the designed mismatch is detected
    Criterion c{12, "shifted sine series: oracle matched, claim flagged"};
    std::string note;
    c.report(check_registry("eq63_sin_over_k", 1e-6, note, "mismatch-with-paper"), note);
  }
  {  // 13: ray limit of the cot kernel
    Criterion c{13, "ray limit: cot kernel converges at phi=0, diverges at 0.6pi"};
    auto e = mero::parse("cot(t/2)/2");
    mero::ConvergenceQuery q;
    q.t = 1.0;
    q.t0 = -1.0;
    q.phi = 0.0;
    q.path = mero::RayPath::segment;
    mero::RayReport in = mero::ray_limit_check(e, q, {{0.0, Side::lower}});
    const auto n = in.grid.size();
    bool ok = in.verdict == "converges to f(t)" && in.grid[n - 1].relerr <= 1e-2 &&
              in.grid[n - 1].relerr <= in.grid[n - 2].relerr &&
              in.grid[n - 2].relerr <= in.grid[n - 3].relerr;
    q.phi = 0.6 * M_PI;
    mero::RayReport out = mero::ray_limit_check(e, q, {{0.0, Side::lower}});
    ok = ok && out.verdict == "diverges";
    c.report(ok);
  }
  {  // 14: finite parts of pure powers
    Criterion c{14, "total value of (t-c)^-m matches the finite part, m=2..5"};
    bool ok = true;
    // even orders: segment finite part from the antiderivative, side-independent
    for (int m : {2, 4}) {
      auto f = [m](cplx z) { return 1.0 / oracle::int_pow(z, m); };
      auto lo = mero::total_value(f, -1.0, 1.0, {{0.0, Side::lower}});
      auto hi = mero::total_value(f, -1.0, 1.0, {{0.0, Side::upper}});
      double fp = oracle::pure_power_finite_part(m);
      ok = ok && lo.exists && std::abs(lo.total - cplx(fp, 0.0)) <= 1e-6 &&
           std::abs(lo.total - hi.total) <= 1e-6;
    }
    // odd orders: the closed circular contour through the pole totals to zero
    for (int m : {3, 5}) {
      for (double alpha : {0.3, 0.15}) {
        auto f = [m](cplx z) { return 1.0 / oracle::int_pow(z - cplx(1.0, 0.0), m); };
        double eps = 2.0 * std::sin(alpha);
        auto q1 = mero::piece_integral(
            f, mero::PathPiece(mero::Arc{cplx(0, 0), 1.0, 2.0 * alpha, 2.0 * M_PI - 2.0 * alpha}),
            1e-12);
        auto q2 = mero::piece_integral(
            f,
            mero::PathPiece(mero::Arc{cplx(1.0, 0.0), eps, -(M_PI / 2.0 + alpha),
                                      M_PI / 2.0 + alpha}),
            1e-12);
        ok = ok && q1.converged && q2.converged && std::abs(q1.value + q2.value) <= 1e-6;
      }
    }
    c.report(ok);
  }
  {  // 15: property mini-suites
    Criterion c{15, "path algebra, Cauchy checks, round-trip, Abelian consistency"};
    bool ok = true;
    std::string note;

    // additivity / reversal
    auto g = [](cplx z) { return std::exp(z) * std::cos(z); };
    auto whole = mero::piece_integral(g, mero::PathPiece(mero::Segment{-1.0, 2.0}), 1e-12);
    auto left = mero::piece_integral(g, mero::PathPiece(mero::Segment{-1.0, 0.3}), 1e-12);
    auto right = mero::piece_integral(g, mero::PathPiece(mero::Segment{0.3, 2.0}), 1e-12);
    auto back = mero::piece_integral(g, mero::PathPiece(mero::Segment{2.0, -1.0}), 1e-12);
    if (std::abs(whole.value - left.value - right.value) > 1e-11 ||
        std::abs(whole.value + back.value) > 1e-11) {
      ok = false;
      note += "path algebra; ";
    }

    // closed-contour Cauchy check
    mero::Arc circle{cplx(0, 0), 1.0, -M_PI, M_PI};
    auto entire = [](cplx z) { return std::exp(z); };
    if (std::abs(mero::piece_integral(entire, mero::PathPiece(circle), 1e-12).value) >
        1e-10) {
      ok = false;
      note += "Cauchy; ";
    }

    // residue radius independence
    const cplx pole(0.3, 0.2);
    auto fr = [pole](cplx z) { return std::exp(z) / (z - pole); };
    auto res = [&](double r) {
      return mero::piece_integral(fr, mero::PathPiece(mero::Arc{pole, r, -M_PI, M_PI}),
                                  1e-12)
                 .value /
             cplx(0.0, 2.0 * M_PI);
    };
    if (std::abs(res(0.4) - res(0.2)) > 1e-9) {
      ok = false;
      note += "residue; ";
    }

    // expression round-trip corpus
    for (const std::string& s : oracle::expression_corpus(200)) {
      std::string p = mero::print(mero::parse(s));
      if (mero::print(mero::parse(p)) != p) {
        ok = false;
        note += "round-trip; ";
        break;
      }
    }

    // Abelian consistency on 20 convergent series
    for (const oracle::Series& srs : oracle::convergent_series()) {
      auto raw = mero::cauchy_limit(srs.terms, 4000, 1e-8);
      auto ab = mero::abel_sum(srs.terms, {}, mero::kAbelTermCap, 1e-8);
      auto ces = mero::cesaro_sum(srs.terms, 1, 200000, 1e-8);
      if (!raw.value || !ab.value || !ces.value ||
          std::abs(*raw.value - srs.limit) > 1e-6 ||
          std::abs(*ab.value - *raw.value) > 1e-6 ||
          std::abs(*ces.value - *raw.value) > 1e-6) {
        ok = false;
        note += "Abelian (" + srs.name + "); ";
        break;
      }
    }
    c.report(ok, note);
  }
  {  // 16: the full verification suite
    Criterion c{16, "full check suite: >=22 pass, exactly one known mismatch"};
    auto t0 = std::chrono::steady_clock::now();
    auto reports = mero::run_all();
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    auto j = mero::report_json(reports);
    int pass = j["summary"]["pass"].get<int>();
    int mism = j["summary"]["mismatch"].get<int>();
    int fail = j["summary"]["failure"].get<int>();
    bool eq63_flagged = false;
    for (const auto& r : reports)
      if (r.id == "eq63_sin_over_k" && r.status == "mismatch-with-paper")
        eq63_flagged = true;
    char buf[120];
    std::snprintf(buf, sizeof buf, "%d pass / %d mismatch / %d failure in %.1fs", pass,
                  mism, fail, secs);
    c.report(pass >= 22 && mism == 1 && fail == 0 && eq63_flagged && secs < 120.0, buf);
  }

  if (failures == 0) std::printf("all 16 acceptance criteria passed\n");
  return failures;
}

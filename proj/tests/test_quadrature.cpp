#include <catch2/catch_amalgamated.hpp>

#include "mero/quadrature.hpp"
#include "oracles.hpp"

using mero::cplx;

TEST_CASE("polynomial and exponential integrals") {
  auto sq = [](double x) { return cplx(x * x, 0.0); };
  mero::QuadResult r = mero::integrate_adaptive(sq, 0.0, 1.0);
  CHECK(r.converged);
  CHECK(oracle::close(r.value, cplx(1.0 / 3.0, 0.0), 1e-14));

  auto ex = [](double x) { return std::exp(cplx(0.0, 1.0) * x); };
  r = mero::integrate_adaptive(ex, 0.0, M_PI);
  CHECK(oracle::close(r.value, cplx(0.0, 2.0), 1e-12));
}

TEST_CASE("orientation and degenerate interval") {
  auto f = [](double x) { return cplx(std::cos(x), 0.0); };
  mero::QuadResult fwd = mero::integrate_adaptive(f, 0.0, 1.0);
  mero::QuadResult bwd = mero::integrate_adaptive(f, 1.0, 0.0);
  CHECK(oracle::close(fwd.value, -bwd.value, 1e-14));
  mero::QuadResult zero = mero::integrate_adaptive(f, 0.5, 0.5);
  CHECK(zero.value == cplx(0.0, 0.0));
  CHECK(zero.panels == 0);
}

TEST_CASE("oscillatory integrand subdivides and converges") {
  auto f = [](double x) { return cplx(std::cos(50.0 * x), 0.0); };
  mero::QuadResult r = mero::integrate_adaptive(f, 0.0, 1.0, 1e-12);
  CHECK(r.converged);
  CHECK(r.panels > 4);
  CHECK(oracle::close(r.value, cplx(std::sin(50.0) / 50.0, 0.0), 1e-12));
}

TEST_CASE("error estimate brackets the true error") {
  auto f = [](double x) { return cplx(1.0 / (1.0 + 25.0 * x * x), 0.0); };
  mero::QuadResult r = mero::integrate_adaptive(f, -1.0, 1.0, 1e-10);
  double exact = 2.0 * std::atan(5.0) / 5.0;
  CHECK(r.converged);
  CHECK(std::abs(r.value.real() - exact) <= std::max(r.error, 1e-12));
}

TEST_CASE("steep integrand near the excision boundary stays converged") {
  // mimics the magnitude profile of an excised double pole: huge values,
  // huge cancellation; global convergence must still be reported
  const double e0 = 1e-4;
  auto f = [](double x) { return cplx(std::cos(20.0 * x) / (x * x), 0.0); };
  mero::QuadResult r = mero::integrate_adaptive(f, e0, M_PI, 1e-10);
  CHECK(r.converged);
  // oracle via integration by parts is awkward; check against a finer run
  mero::QuadResult fine = mero::integrate_adaptive(f, e0, M_PI, 1e-13, 24);
  CHECK(oracle::close(r.value, fine.value, 1e-6 * std::abs(fine.value)));
}

TEST_CASE("non-finite integrand is flagged") {
  auto f = [](double x) { return cplx(1.0 / x, 0.0); };  // pole inside
  mero::QuadResult r = mero::integrate_adaptive(f, -1.0, 1.0, 1e-10);
  CHECK_FALSE(r.converged);
}

#include <catch2/catch_amalgamated.hpp>

#include "mero/expr.hpp"
#include "oracles.hpp"

using mero::cplx;

TEST_CASE("literal and constant evaluation") {
  mero::Bindings b;
  CHECK(oracle::close(mero::eval(mero::parse("exp(i*pi)"), b), cplx(-1.0, 0.0), 1e-15));
  CHECK(oracle::close(mero::eval(mero::parse("2^3^2"), b), cplx(512.0, 0.0), 0.0));
  CHECK(oracle::close(mero::eval(mero::parse("-2^2"), b), cplx(-4.0, 0.0), 0.0));
}

TEST_CASE("trigonometric values near the removable points") {
  mero::Bindings b;
  b.set("t", cplx(M_PI, 0.0));
  CHECK(oracle::close(mero::eval(mero::parse("sin(t)/(2*(1-cos(t)))"), b), cplx(0.0, 0.0),
                      1e-15));
  CHECK(oracle::close(mero::eval(mero::parse("1/(1-cos(t))"), b), cplx(0.5, 0.0), 1e-15));
}

TEST_CASE("round-trip on a 200-expression corpus") {
  for (const std::string& s : oracle::expression_corpus(200)) {
    CAPTURE(s);
    auto e = mero::parse(s);
    std::string printed = mero::print(e);
    auto e2 = mero::parse(printed);
    CHECK(mero::print(e2) == printed);
    // numeric agreement at a fixed point confirms the structures match
    mero::Bindings b;
    b.set("t", cplx(0.37, -0.21));
    cplx v1 = mero::eval(e, b), v2 = mero::eval(e2, b);
    bool both_nan = !(std::isfinite(v1.real()) && std::isfinite(v2.real()));
    CHECK((both_nan || oracle::close(v1, v2, 1e-12 * (1.0 + std::abs(v1)))));
  }
}

TEST_CASE("eval matches composite closed forms at 1000 random points") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> d(-10.0, 10.0);
  auto cot_expr = mero::parse("cot(t)");
  auto ratio = mero::parse("cos(t)/sin(t)");
  auto half_sq = mero::parse("sin(t)^2");
  auto half_id = mero::parse("(1-cos(2*t))/2");
  int used = 0;
  while (used < 1000) {
    cplx z(d(rng), d(rng));
    if (std::abs(std::sin(z)) < 1e-2) continue;  // stay away from cot poles
    ++used;
    mero::Bindings b;
    b.set("t", z);
    cplx a = mero::eval(cot_expr, b), r = mero::eval(ratio, b);
    CHECK(oracle::close(a, r, 1e-12 * (1.0 + std::abs(r))));
    cplx s = mero::eval(half_sq, b), h = mero::eval(half_id, b);
    CHECK(oracle::close(s, h, 1e-12 * (1.0 + std::abs(h))));
  }
}

TEST_CASE("evaluation is deterministic") {
  auto e = mero::parse("sin(t)*exp(cos(t))/(t^2+1)");
  mero::Bindings b;
  b.set("t", cplx(1.234567, -0.7654321));
  cplx v1 = mero::eval(e, b);
  cplx v2 = mero::eval(e, b);
  CHECK(v1.real() == v2.real());
  CHECK(v1.imag() == v2.imag());
}

TEST_CASE("parser rejections") {
  CHECK_THROWS_AS(mero::parse("2t"), mero::ParseError);
  CHECK_THROWS_AS(mero::parse("sin("), mero::ParseError);
  CHECK_THROWS_AS(mero::parse(""), mero::ParseError);
  CHECK_THROWS_AS(mero::parse("1 + * 2"), mero::ParseError);
}

TEST_CASE("evaluation errors") {
  mero::Bindings empty;
  CHECK_THROWS_AS(mero::eval(mero::parse("t+1"), empty), mero::EvalError);
  CHECK_THROWS_AS(mero::eval(mero::parse("1/0"), empty), mero::EvalError);
  CHECK_THROWS_AS(mero::eval(mero::parse("log(0)"), empty), mero::EvalError);
  CHECK_THROWS_AS(mero::eval(mero::parse("sin(1,2)"), empty), mero::ParseError);
}

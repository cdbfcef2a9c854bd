#include <cmath>

#include "doctest.h"
#include "jumphankel/errors.hpp"
#include "jumphankel/quadrature.hpp"
#include "jumphankel/real.hpp"

using namespace jumphankel;

namespace {
const Precision P256(256);

// tolerance relative to a coarse first pass, since G_j grows like Gamma((j+1)/2)
Real tail_by_quadrature(unsigned j, const Real& t) {
  auto f = [j](const Real& x) { return pow(x, j) * exp(-square(x)); };
  const Real inf = Real::infinity(P256);
  const Real coarse = tanh_sinh_integrate(f, t, inf, Real::parse("1e-3", P256)).value;
  const Real tol = Real::pow2(-232, P256) * max(Real(1L, P256), abs(coarse));
  return tanh_sinh_integrate(f, t, inf, tol).value;
}
}  // namespace

TEST_CASE("precision bounds") {
  CHECK(Precision().bits() == 256);
  CHECK_THROWS_AS(Precision(63), std::invalid_argument);
  CHECK(Precision(64).round_trip_digits() == 21);
}

TEST_CASE("parse and print round trip") {
  const Real x = Real::parse("0.1", P256);
  const Real y = Real::parse(x.to_string(), P256);
  CHECK(x == y);
  CHECK_THROWS_AS(Real::parse("0.1x", P256), std::invalid_argument);
  CHECK(Real::parse("-inf", P256).is_inf());
}

TEST_CASE("mixed precision arithmetic takes the wider operand") {
  Real a(1L, Precision(64));
  Real b(3L, Precision(512));
  CHECK((a / b).precision().bits() == 512);
  CHECK((b / a).precision().bits() == 512);
  Real c = a;
  c = b;
  CHECK(c.precision().bits() == 512);
}

TEST_CASE("erfc basic values") {
  CHECK(erfc(Real(0L, P256)) == 1.0);
  for (const char* s : {"0.5", "1", "3"}) {
    const Real x = Real::parse(s, P256);
    CHECK(relative_difference(erfc(x) + erfc(-x), Real(2L, P256)) < Real::pow2(-250, P256));
  }
  // quadrature oracle: (2/sqrt(pi)) int_1^inf e^{-s^2} ds
  const Real one(1L, P256);
  const Real q = 2L * tail_by_quadrature(0, one) / sqrt(Real::pi(P256));
  CHECK(relative_difference(erfc(one), q) < Real::parse("1e-65", P256));
  CHECK(erfc(one).to_string(12).substr(0, 12) == "1.5729920705");
}

TEST_CASE("erfc decreasing on a grid") {
  Real prev = erfc(Real(-6L, P256));
  for (int i = -59; i <= 60; ++i) {
    const Real cur = erfc(Real(i, P256) / 10L);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("tail moments") {
  const Real zero(0L, P256);
  CHECK(relative_difference(gauss_tail_moment(0, zero), sqrt(Real::pi(P256)) / 2L) <
        Real::pow2(-250, P256));
  for (long t : {0L, 1L}) {
    const Real tt(t, P256);
    CHECK(relative_difference(gauss_tail_moment(1, tt), exp(-square(tt)) / 2L) <
          Real::pow2(-250, P256));
  }
  const Real t07 = Real::parse("0.7", P256);
  CHECK(abs(gauss_tail_moment(4, t07) - tail_by_quadrature(4, t07)) < Real::parse("1e-60", P256));
  CHECK(abs(gauss_tail_moment(3, zero) - Real(0.5, P256)) < Real::pow2(-250, P256));
}

TEST_CASE("tail-moment recurrence against quadrature, j <= 24") {
  // >= 70% of working digits
  const Real bound = pow(Real(10L, P256), -static_cast<long>(0.7 * 256 * 0.301));
  for (const char* ts : {"-2", "-0.5", "0", "0.5", "2"}) {
    const Real t = Real::parse(ts, P256);
    const auto g = gauss_tail_moments(24, t);
    for (unsigned j = 0; j <= 24; ++j) {
      CAPTURE(ts);
      CAPTURE(j);
      CHECK(relative_difference(g[j], tail_by_quadrature(j, t)) <= bound);
    }
  }
}

TEST_CASE("full-line moments") {
  CHECK(relative_difference(gauss_full_moment(0, P256), sqrt(Real::pi(P256))) <
        Real::pow2(-250, P256));
  CHECK(gauss_full_moment(5, P256).is_zero());
  CHECK(relative_difference(gauss_full_moment(4, P256), 3L * sqrt(Real::pi(P256)) / 4L) <
        Real::pow2(-250, P256));
}

TEST_CASE("quadrature examples") {
  const Real tol = Real::pow2(-200, P256);
  const Real zero(0L, P256), one(1L, P256);
  auto r = tanh_sinh_integrate([&](const Real&) { return one; }, zero, one, tol);
  CHECK(abs(r.value - one) < Real::pow2(-190, P256));
  auto g = tanh_sinh_integrate([](const Real& x) { return exp(-square(x)); },
                               Real::infinity(P256, -1), Real::infinity(P256), tol);
  CHECK(abs(g.value - sqrt(Real::pi(P256))) < Real::pow2(-190, P256));
  auto c = tanh_sinh_integrate([](const Real& x) { return pow(x, 3) * exp(-square(x)); }, zero,
                               Real::infinity(P256), tol);
  CHECK(abs(c.value - Real(0.5, P256)) < Real::pow2(-190, P256));
  // endpoint singularity of integrable type: int_0^1 x^{-1/2} = 2
  auto s = tanh_sinh_integrate([](const Real& x) { return 1L / sqrt(x); }, zero, one,
                               Real::pow2(-150, P256));
  CHECK(abs(s.value - 2L) < Real::pow2(-140, P256));
  // reversed interval
  auto rev = tanh_sinh_integrate([&](const Real&) { return one; }, one, zero, tol);
  CHECK(abs(rev.value + one) < Real::pow2(-190, P256));
}

TEST_CASE("quadrature gives up on a jump at an unreachable tolerance") {
  const Real zero(0L, Precision(128)), one(1L, Precision(128));
  auto step = [](const Real& x) { return x < 0.3 ? Real(0L, x.precision()) : Real(1L, x.precision()); };
  CHECK_THROWS_AS(tanh_sinh_integrate(step, zero, one, Real::pow2(-120, Precision(128)), 6),
                  NonConvergence);
}

TEST_CASE("precision scaling keeps leading digits") {
  const Precision p128(128);
  for (const char* s : {"-1.3", "0.25", "2.7"}) {
    const Real a = erfc(Real::parse(s, p128));
    const Real b = erfc(Real::parse(s, P256));
    CHECK(a.to_string(30) == b.to_string(30));
    const Real ga = gauss_tail_moment(7, Real::parse(s, p128));
    const Real gb = gauss_tail_moment(7, Real::parse(s, P256));
    CHECK(ga.to_string(30) == gb.to_string(30));
  }
}

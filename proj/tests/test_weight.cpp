#include "doctest.h"
#include "jumphankel/errors.hpp"
#include "jumphankel/opsys.hpp"
#include "jumphankel/weight.hpp"

using namespace jumphankel;

namespace {
const Precision P256(256);
Real R(const char* s) { return Real::parse(s, P256); }
using DV = std::vector<double>;
}  // namespace

TEST_CASE("weight_eval examples") {
  const auto c1 = JumpWeightConfig::make({1.0}, {1.0, -1.0});
  CHECK(weight_eval(R("0"), c1) == 1.0);
  CHECK(weight_eval(R("2"), c1).is_zero());
  // theta(0) = 0: at the jump itself the factor is omega_0
  CHECK(weight_eval(R("1"), c1) == exp(-R("1")));
  const auto c2 = JumpWeightConfig::make({0.0, 1.0}, {0.0, 1.0, -1.0});
  CHECK(weight_eval(R("0.5"), c2) == exp(-R("0.25")));
  CHECK(weight_eval(R("0"), c2).is_zero());
}

TEST_CASE("config validation names the field") {
  auto field_of = [](auto&& fn) {
    try {
      fn();
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("none");
  };
  CHECK(field_of([] { JumpWeightConfig::make(DV{1.0, 0.5}, DV{1.0, 0.0, 0.0}); }) == "t");
  CHECK(field_of([] { JumpWeightConfig::make(DV{0.5, 0.5}, DV{1.0, 0.0, 0.0}); }) == "t");
  CHECK(field_of([] { JumpWeightConfig::make(DV{0.5}, DV{1.0}); }) == "omega");
  CHECK(field_of([] { JumpWeightConfig::make(DV{0.5}, DV{1.0, -2.0}); }) == "omega");
  CHECK(field_of([] { JumpWeightConfig::make(DV{0.5}, DV{0.0, 0.0}); }) == "omega");
  CHECK(field_of([] { JumpWeightConfig::make(DV{0.5}, DV{0.0, 1.0}); }) == "none");
  CHECK_THROWS_AS(JumpWeightConfig::make({0.0, 1.0}, {1.0, 0.0, 0.0}).with_jump(1, R("1")),
                  StepCollision);
}

TEST_CASE("moment examples") {
  const auto g = JumpWeightConfig::pure_gaussian(P256);
  const auto mg = moments(g, 4);
  const Real sqpi = sqrt(Real::pi(P256));
  CHECK(relative_difference(mg.mu[0], sqpi) < Real::pow2(-250, P256));
  CHECK(mg.mu[1].is_zero());
  const auto half = JumpWeightConfig::make({0.0}, {0.0, 1.0}, P256);
  CHECK(abs(moments(half, 1).mu[1] - R("0.5")) < Real::pow2(-250, P256));
  const auto box = JumpWeightConfig::make({-1.0, 1.0}, {1.0, -1.0, 1.0}, P256);
  const Real one(1L, P256);
  const Real expect = sqpi - sqpi / 2L * (erfc(-one) - erfc(one));
  CHECK(relative_difference(moments(box, 0).mu[0], expect) < Real::pow2(-248, P256));
}

TEST_CASE("closed-form moments agree with quadrature, j <= 24") {
  const auto cfgs = {
      JumpWeightConfig::make({R("0.4")}, {R("1"), R("-0.5")}, P256),
      JumpWeightConfig::make({R("-1"), R("0"), R("1")}, {R("1"), R("-0.6"), R("0.4"), R("0.2")}, P256),
  };
  for (const auto& c : cfgs) {
    const auto mt = moments(c, 24);
    for (unsigned j = 0; j <= 24; j += 3) {
      const Real tol = Real::pow2(-200, P256) * max(Real(1L, P256), abs(mt.mu[j]));
      CAPTURE(j);
      CHECK(relative_difference(mt.mu[j], moment_by_quadrature(c, j, tol)) < R("1e-50"));
    }
  }
}

TEST_CASE("omega scaling multiplies every moment") {
  const auto c = JumpWeightConfig::make({R("-0.3"), R("0.8")}, {R("1"), R("-0.7"), R("0.4")}, P256);
  const Real s = R("2.5");
  const auto a = moments(c, 12), b = moments(c.scaled(s), 12);
  for (unsigned j = 0; j <= 12; ++j)
    CHECK(relative_difference(b.mu[j], s * a.mu[j]) < Real::pow2(-250, P256));
}

TEST_CASE("positivity: LDL^T pivots stay positive to n = 12") {
  const auto cfgs = {
      JumpWeightConfig::pure_gaussian(P256),
      JumpWeightConfig::make({R("0.5")}, {R("1"), R("-1")}, P256),
      JumpWeightConfig::make({R("0"), R("1")}, {R("0"), R("1"), R("-1")}, P256),
      JumpWeightConfig::make({R("-1"), R("0"), R("1")}, {R("1"), R("-0.6"), R("0.4"), R("0.2")}, P256),
  };
  for (const auto& c : cfgs) {
    const auto sys = build_op_system(c, 12);
    for (const auto& h : sys.h) CHECK(h > 0.0);
  }
}

#include "doctest.h"
#include "jumphankel/errors.hpp"
#include "jumphankel/painleve.hpp"

using namespace jumphankel;

namespace {
const Precision P256(256);
Real R(const char* s) { return Real::parse(s, P256); }

std::vector<Real> reals(std::vector<const char*> xs) {
  std::vector<Real> v;
  for (auto s : xs) v.push_back(R(s));
  return v;
}
JumpWeightConfig cfg(std::vector<const char*> t, std::vector<const char*> w) {
  return JumpWeightConfig::make(reals(t), reals(w), P256);
}
DiagonalPath path(std::vector<const char*> c, std::vector<const char*> w) {
  return DiagonalPath::make(reals(c), reals(w), P256);
}
void report(const ResidualReport& rep) {
  for (const auto& id : rep.identities())
    MESSAGE(id << " abs " << rep.max_abs(id).to_string(3) << " rel " << rep.max_rel(id).to_string(3));
}
}  // namespace

TEST_CASE("diagonal path validation") {
  CHECK_THROWS_AS(path({"0.1", "1"}, {"1", "-0.5", "0.2"}), ConfigError);
  CHECK_THROWS_AS(path({"0", "0"}, {"1", "-0.5", "0.2"}), ConfigError);
  CHECK_THROWS_AS(path({"0", "1"}, {"1", "-0.5"}), ConfigError);
  const auto p = DiagonalPath::through(cfg({"-0.2", "0.9"}, {"1", "-0.6", "0.3"}));
  CHECK(p.c()[1] == R("0.9") - R("-0.2"));
}

TEST_CASE("partials of ln D_n and p") {
  const auto inert = cfg({"0.3", "0.8"}, {"1", "0", "-0.3"});
  CHECK(partial_lnD(inert, 3, 1).is_zero());
  const auto c = cfg({"0.3"}, {"1", "-0.4"});
  const auto rep = check_partials(c, 3, R("1e-8"));
  report(rep);
  CHECK(rep.max_abs("dlnD") < R("1e-25"));
  CHECK(rep.max_abs("dp") < R("1e-25"));
  const auto rep2 = check_partials(cfg({"-1", "0", "1"}, {"1", "-0.6", "0.4", "0.2"}), 5);
  report(rep2);
  CHECK(rep2.max_rel() < R("1e-30"));
  CHECK_THROWS_AS(partial_lnD(cfg({"0", "0.1"}, {"1", "-0.5", "0.2"}), 2, 1, R("0.06")), StepCollision);
}

TEST_CASE("Toda") {
  {
    const auto p = path({"0", "0.6"}, {"1", "0", "0"});
    const auto rep = check_toda(p, 3, R("0.2"));
    CHECK(rep.max_abs("toda-beta") < R("1e-40"));
  }
  {
    const auto p = path({"0"}, {"1", "-1"});
    const auto rep = check_toda(p, 4, R("0.5"), R("1e-10"));
    report(rep);
    CHECK(rep.max_abs() < R("1e-20"));
  }
  {
    const auto p = path({"0", "1"}, {"1", "-1", "1"});
    const auto rep = check_toda(p, 3, R("-0.3"));
    report(rep);
    CHECK(rep.max_abs() < R("1e-18"));
  }
}

TEST_CASE("Riccati") {
  {
    const auto p = path({"0"}, {"0", "1"});
    const auto rep = check_riccati(p, 2, R("0.2"));
    report(rep);
    CHECK(rep.max_abs() < R("1e-20"));
  }
  {
    const auto p = path({"0", "0.5", "1.2"}, {"1", "-0.5", "0.3", "0.1"});
    const auto rep = check_riccati(p, 3, R("-0.8"));
    report(rep);
    CHECK(rep.max_abs() < R("1e-18"));
  }
  {
    const auto p = path({"0", "0.5"}, {"1", "0", "-0.5"});
    const auto rep = check_riccati(p, 3, R("0.1"));
    CHECK(rep.items()[0].abs.is_zero());
    CHECK(rep.max_rel() < R("1e-30"));
  }
}

TEST_CASE("second-order equation for R") {
  {
    const auto p = path({"0"}, {"0", "1"});
    const auto rep = check_pde_R(p, 3, R("0"), R("1e-8"));
    report(rep);
    CHECK(rep.max_rel() < R("1e-15"));
  }
  {
    const auto p = path({"0", "0.7"}, {"1", "-0.8", "0.5"});
    const auto rep = check_pde_R(p, 4, R("0.1"));
    report(rep);
    CHECK(rep.max_rel() < R("1e-14"));
  }
}

TEST_CASE("sigma routes") {
  const auto inert = cfg({"0.3"}, {"1", "0"});
  CHECK(abs(sigma_value(inert, 3)) < R("1e-60"));
  {
    const auto s = sigma_sample(cfg({"0.6"}, {"1", "-1"}), 3);
    const auto rep = check_sigma_routes(s);
    report(rep);
    CHECK(abs(s.sigma_rR - s.sigma) < R("1e-40"));
    CHECK(abs(s.sigma_fd - s.sigma_rR) < R("1e-22"));
    CHECK(rep.max_abs("delta-nonneg").is_zero());
  }
  {
    const auto s = sigma_sample(cfg({"-0.4", "0.5"}, {"1", "-0.5", "0.3"}), 4);
    const auto rep = check_sigma_routes(s);
    report(rep);
    CHECK(rep.max_rel("R-sig") < R("1e-20"));
    CHECK(branch_flip_margin(s) > R("1e-5"));
  }
}

TEST_CASE("sigma PDE") {
  {
    const auto s = sigma_sample(cfg({"0.5"}, {"1", "-1"}), 4, R("1e-7"));
    const auto rep = check_sigma_pde(s);
    report(rep);
    CHECK(rep.max_rel() < R("1e-12"));
  }
  {
    const auto s = sigma_sample(cfg({"-0.3"}, {"0", "1"}), 3, R("1e-7"));
    CHECK(s.sgn[0] == 1);
    const auto rep = check_sigma_pde(s);
    report(rep);
    CHECK(rep.max_rel() < R("1e-12"));
  }
  {
    const auto s = sigma_sample(cfg({"0", "1"}, {"1", "-1", "1"}), 3);
    const auto rep = check_sigma_pde(s);
    report(rep);
    CHECK(rep.max_rel("sigma-m2") < R("1e-10"));
    CHECK(rep.max_rel("sigma-pde") < R("1e-12"));
  }
  {
    const auto s = sigma_sample(cfg({"-1", "0", "1"}, {"1", "-0.6", "0.4", "0.2"}), 3);
    const auto rep = check_sigma_pde(s);
    report(rep);
    CHECK(rep.max_rel() < R("1e-12"));
  }
}

TEST_CASE("integral representation") {
  const auto p1 = path({"0"}, {"1", "-1"});
  const auto z = integral_representation(p1, 2, R("0"), R("1e-20"));
  CHECK(z.value == 1.0);
  const auto a = integral_representation(p1, 2, R("0.5"), R("1e-20"));
  MESSAGE("m=1 " << relative_difference(a.value, a.direct).to_string(3));
  CHECK(relative_difference(a.value, a.direct) < R("1e-10"));
  const auto p2 = path({"0", "0.8"}, {"1", "-0.7", "0.4"});
  const auto b = integral_representation(p2, 3, R("-0.4"), R("1e-20"));
  MESSAGE("m=2 " << relative_difference(b.value, b.direct).to_string(3));
  CHECK(relative_difference(b.value, b.direct) < R("1e-8"));
}

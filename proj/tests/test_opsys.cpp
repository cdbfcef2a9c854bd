#include <array>

#include "doctest.h"
#include "jumphankel/errors.hpp"
#include "jumphankel/ladder.hpp"
#include "jumphankel/opsys.hpp"
#include "jumphankel/quadrature.hpp"

using namespace jumphankel;

namespace {
const Precision P256(256);
Real R(const char* s) { return Real::parse(s, P256); }

Real gaussian_partition(int n, Precision p) {
  // pi^{n/2} 2^{-n(n-1)/2} prod_{j=2}^n j! / n!
  Real v = pow(sqrt(Real::pi(p)), n);
  v = ldexp(v, -static_cast<long>(n) * (n - 1) / 2);
  Real fact(1L, p);
  for (int j = 2; j <= n; ++j) {
    fact = fact * j;
    v = v * fact;
  }
  return v / fact;
}

std::vector<JumpWeightConfig> mixed_configs() {
  return {
      JumpWeightConfig::make({R("0.4")}, {R("1"), R("-0.5")}, P256),
      JumpWeightConfig::make({R("0.5")}, {R("1"), R("-1")}, P256),
      JumpWeightConfig::make({R("0"), R("1")}, {R("1"), R("-1"), R("1")}, P256),
      JumpWeightConfig::make({R("-0.2"), R("0.9")}, {R("1"), R("-0.6"), R("0.3")}, P256),
      JumpWeightConfig::make({R("-1"), R("0"), R("1")}, {R("1"), R("-0.6"), R("0.4"), R("0.2")}, P256),
  };
}
}  // namespace

TEST_CASE("pure Gaussian system") {
  const auto sys = build_op_system(JumpWeightConfig::pure_gaussian(P256), 4);
  for (const auto& a : sys.alpha) CHECK(abs(a) < Real::pow2(-240, P256));
  const Real sqpi = sqrt(Real::pi(P256));
  CHECK(relative_difference(sys.h[0], sqpi) < Real::pow2(-250, P256));
  CHECK(relative_difference(sys.h[1], sqpi / 2L) < Real::pow2(-250, P256));
  CHECK(relative_difference(sys.beta[1], R("0.5")) < Real::pow2(-250, P256));
  for (int n = 1; n <= 4; ++n)
    CHECK(relative_difference(sys.beta[static_cast<size_t>(n)], Real(n, P256) / 2L) <
          Real::pow2(-245, P256));
  CHECK(abs(eval_P(sys, 2, R("0")).value + R("0.5")) < Real::pow2(-250, P256));
  const auto p0 = eval_P(sys, 0, R("0.37"));
  CHECK(p0.value == 1.0);
  CHECK(p0.derivative.is_zero());
}

TEST_CASE("half-line weight alpha_0") {
  const auto sys = build_op_system(JumpWeightConfig::make({R("0")}, {R("0"), R("1")}, P256), 2);
  CHECK(relative_difference(sys.alpha[0], 1L / sqrt(Real::pi(P256))) < Real::pow2(-250, P256));
}

TEST_CASE("partition function n <= 10 both routes") {
  const auto g = JumpWeightConfig::pure_gaussian(P256);
  CHECK(relative_difference(hankel_det(2, g), Real::pi(P256) / 2L) < Real::pow2(-245, P256));
  for (int n = 1; n <= 10; ++n) {
    const Real z = gaussian_partition(n, P256);
    CAPTURE(n);
    CHECK(relative_difference(hankel_det(n, g), z) < R("1e-50"));
    CHECK(relative_difference(hankel_det_direct(n, g), z) < R("1e-50"));
  }
}

TEST_CASE("D_1 is mu_0") {
  for (const auto& c : mixed_configs())
    CHECK(relative_difference(hankel_det(1, c), moments(c, 0).mu[0]) < Real::pow2(-250, P256));
}

TEST_CASE("Heine: beta_n from determinants, n <= 12") {
  for (const auto& c : mixed_configs()) {
    const auto sys = build_op_system(c, 12);
    std::vector<Real> d;
    for (int n = 0; n <= 13; ++n) d.push_back(n == 0 ? Real(1L, P256) : hankel_det_direct(n, c));
    for (int n = 1; n <= 12; ++n) {
      const auto un = static_cast<size_t>(n);
      CAPTURE(n);
      CHECK(relative_difference(sys.beta[un], d[un + 1] * d[un - 1] / square(d[un])) < R("1e-40"));
      CHECK(relative_difference(sys.det(n), d[un]) < R("1e-40"));
    }
  }
}

TEST_CASE("recurrence invariants") {
  for (const auto& c : mixed_configs()) {
    const auto sys = build_op_system(c, 8);
    for (int n = 0; n <= 8; ++n) {
      const auto un = static_cast<size_t>(n);
      CHECK(sys.coeffs[un][un] == 1.0);
      if (n >= 1) {
        CHECK(relative_difference(sys.beta[un], sys.h[un] / sys.h[un - 1]) < R("1e-60"));
        Real s(P256);
        for (size_t j = 0; j < un; ++j) s = s + sys.alpha[j];
        CHECK(abs(s + sys.p_sub[un]) < R("1e-60"));
      }
      if (n < 8) CHECK(abs(sys.alpha[un] - (sys.p_sub[un] - sys.p_sub[un + 1])) < R("1e-60"));
      for (const char* z : {"-1.3", "0.2", "1.7"})
        CHECK(abs(eval_P(sys, n, R(z)).value - eval_P_horner(sys, n, R(z))) < R("1e-60"));
    }
  }
}

TEST_CASE("orthogonality by quadrature, i, j <= 4") {
  const auto c = JumpWeightConfig::make({R("-0.2"), R("0.9")}, {R("1"), R("-0.6"), R("0.3")}, P256);
  const auto sys = build_op_system(c, 4);
  const Real tol = Real::pow2(-180, P256);
  std::vector<Real> cuts{Real::infinity(P256, -1)};
  for (const auto& t : c.t()) cuts.push_back(t);
  cuts.push_back(Real::infinity(P256));
  Real hmax(P256);
  for (const auto& h : sys.h) hmax = max(hmax, h);
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= i; ++j) {
      Real total(P256);
      for (size_t s = 0; s + 1 < cuts.size(); ++s) {
        auto f = [&](const Real& x) {
          return eval_P(sys, i, x).value * eval_P(sys, j, x).value * weight_eval(x, c);
        };
        // interior point of each piece has the piece's constant factor
        total = total + tanh_sinh_integrate(f, cuts[s], cuts[s + 1], tol).value;
      }
      if (i == j)
        CHECK(relative_difference(total, sys.h[static_cast<size_t>(i)]) < R("1e-40"));
      else
        CHECK(abs(total) < R("1e-40") * hmax);
    }
}

TEST_CASE("Christoffel-Darboux") {
  const auto g = build_op_system(JumpWeightConfig::pure_gaussian(P256), 4);
  CHECK(relative_difference(cd_kernel(g, 1, R("0.3"), R("-1.1")), 1L / g.h[0]) <
        Real::pow2(-250, P256));
  CHECK(abs(cd_kernel(g, 3, R("0.3"), R("-0.2")) - cd_kernel_closed(g, 3, R("0.3"), R("-0.2"))) <
        R("1e-60"));
  for (const auto& c : mixed_configs()) {
    const auto sys = build_op_system(c, 6);
    for (int n = 1; n <= 6; ++n) {
      const Real a = cd_kernel(sys, n, R("0.45"), R("-0.8"));
      CHECK(abs(a - cd_kernel(sys, n, R("-0.8"), R("0.45"))) < R("1e-60"));
      CHECK(relative_difference(a, cd_kernel_closed(sys, n, R("0.45"), R("-0.8"))) < R("1e-50"));
    }
  }
}

TEST_CASE("ladder_AB") {
  const auto c = JumpWeightConfig::make({R("0.3"), R("1.1")}, {R("1"), R("0"), R("0")}, P256);
  const auto sys = build_op_system(c, 4);
  const auto st = compute_ladder(sys, 3);
  const auto ab = ladder_AB(c, st, R("0.9"));
  CHECK(ab.A == 2.0);
  CHECK(ab.B.is_zero());
  CHECK_THROWS_AS(ladder_AB(c, st, R("0.3")), PoleAtJump);
}

TEST_CASE("sample points avoid jumps") {
  const auto c = JumpWeightConfig::make({R("-1.6"), R("0.35")}, {R("1"), R("-0.5"), R("0.2")}, P256);
  const auto z = identity_sample_points(c);
  for (const auto& zz : z)
    for (const auto& t : c.t()) CHECK(zz != t);
  CHECK(z.size() == 5);  // -1.6 coincides with t_1, one filler added
  CHECK(identity_sample_points(JumpWeightConfig::make({R("0.5")}, {R("1"), R("-1")}, P256)).size() == 5);
  CHECK(identity_sample_points(c.shifted(R("10"))).size() == 5);
}

TEST_CASE("function-level identities, m in {1,2,3}, n <= 8") {
  for (const auto& c : mixed_configs()) {
    const auto sys = build_op_system(c, 9);
    const auto states = compute_ladder_states(sys, 9);
    const auto z = identity_sample_points(c);
    for (int n = 0; n <= 8; ++n) {
      const auto rep = check_function_identities(sys, states, n, z);
      for (const auto& id : rep.identities()) {
        CAPTURE(id);
        CAPTURE(n);
        CHECK(rep.max_abs(id) < R("1e-35"));
      }
    }
  }
}

TEST_CASE("IllConditioned fires when precision is too low") {
  const auto c = JumpWeightConfig::make({R("0.5")}, {R("1"), R("-1")}, Precision(64));
  CHECK_THROWS_AS(build_op_system(c, 16), IllConditioned);
}

TEST_CASE("pivot accuracy estimate tracks the actual error") {
  const Precision lo(96), hi(512);
  auto make = [](Precision p) {
    return JumpWeightConfig::make({Real::parse("0.5", p)}, {Real(1L, p), Real(-1L, p)}, p);
  };
  const auto ref = build_op_system(make(hi), 14);
  for (int n : {4, 8, 14}) {
    const auto sys = build_op_system(make(lo), n);
    Real err(lo);
    for (int k = 1; k <= n; ++k) {
      const auto uk = static_cast<size_t>(k);
      err = max(err, relative_difference(sys.beta[uk], ref.beta[uk].rounded_to(lo)));
    }
    CAPTURE(n);
    CHECK(err < 10L * sys.pivot_accuracy);
    CHECK(sys.pivot_accuracy < 10L * err);
  }
}

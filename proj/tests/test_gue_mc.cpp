#include <chrono>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "jumphankel/errors.hpp"
#include "jumphankel/gue_mc.hpp"
#include "jumphankel/opsys.hpp"

using namespace jumphankel;

namespace {
const double inf = std::numeric_limits<double>::infinity();
const Precision P256(256);
}  // namespace

TEST_CASE("regions and indicator weights") {
  const auto r = region_from_config(JumpWeightConfig::make(std::vector<double>{-0.3, 0.8}, std::vector<double>{1, -1, 1}, P256));
  REQUIRE(r.size() == 2);
  CHECK(r[0].lo == -inf);
  CHECK(r[0].hi == doctest::Approx(-0.3));
  CHECK(r[1].lo == doctest::Approx(0.8));
  CHECK(r[1].hi == inf);
  CHECK(region_from_config(JumpWeightConfig::pure_gaussian(P256)).front().lo == -inf);
  CHECK_THROWS_AS(region_from_config(JumpWeightConfig::make(std::vector<double>{0.1}, std::vector<double>{1, -0.5}, P256)),
                  ConfigError);

  const auto back = region_from_config(config_from_region(parse_region("0:1"), P256));
  CHECK(format_region(back) == "0:1");
  CHECK(format_region(parse_region("-inf:-0.5,2:inf")) == "-inf:-0.5,2:inf");
  CHECK_THROWS_AS(parse_region("1:0"), ConfigError);
  CHECK_THROWS_AS(parse_region("0:1,0.5:2"), ConfigError);
  CHECK_THROWS_AS(parse_region("a:1"), ConfigError);
  CHECK(region_contains(parse_region("-inf:0,1:2"), 1.5));
  CHECK_FALSE(region_contains(parse_region("-inf:0,1:2"), 0.5));
}

TEST_CASE("single draws") {
  std::mt19937_64 rng(7);
  for (int n : {1, 3, 6}) {
    const auto s = sample_spectrum(n, rng);
    REQUIRE(s.eigenvalues.size() == static_cast<size_t>(n));
    double sum = 0;
    for (double x : s.eigenvalues) sum += x;
    CHECK(std::abs(sum - s.trace) <= 1e-10);
    CHECK(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
  }
  CHECK_THROWS_AS(sample_spectrum(0, rng), std::invalid_argument);
}

TEST_CASE("second moments of the matrix model") {
  std::mt19937_64 rng(11);
  const long N = 1000000;
  double s1 = 0, s2 = 0;
  for (long i = 0; i < N; ++i) {
    const double x = sample_spectrum(1, rng).eigenvalues[0];
    s1 += x;
    s2 += x * x;
  }
  const double var = s2 / N - (s1 / N) * (s1 / N);
  CHECK(std::abs(var - 0.5) <= 0.005);

  // E[sum lambda^2] = n^2/2
  double m1 = 0, m2 = 0;
  for (long i = 0; i < N; ++i) {
    double q = 0;
    for (double x : sample_spectrum(4, rng).eigenvalues) q += x * x;
    m1 += q;
    m2 += q * q;
  }
  const double mean = m1 / N, se = std::sqrt((m2 / N - mean * mean) / N);
  CHECK(std::abs(mean - 8.0) <= 3 * se);
}

TEST_CASE("estimates") {
  const auto all = estimate_probability(3, parse_region("-inf:inf"), 10000, 1);
  CHECK(all.p_hat == 1.0);
  CHECK(all.std_err == 0.0);
  CHECK_THROWS_AS(estimate_probability(3, parse_region("0:1"), 9999, 1), ConfigError);

  // block seeding makes the count independent of the thread count
  const auto a = estimate_probabilities(2, {parse_region("-inf:1"), parse_region("0:inf")}, 50000, 42, 1);
  const auto b = estimate_probabilities(2, {parse_region("-inf:1"), parse_region("0:inf")}, 50000, 42, 3);
  CHECK(a[0].hits == b[0].hits);
  CHECK(a[1].hits == b[1].hits);
}

TEST_CASE("determinant probabilities against sampling") {
  const long N = 1000000;
  const auto t0 = std::chrono::steady_clock::now();
  // largest eigenvalue, n = 2: D_2(1; (1,-1)) / (pi/2)
  const auto largest = parse_region("-inf:1");
  const Real d2 = determinant_probability(largest, 2, P256);
  const auto gauss2 = Real::pi(P256) / 2L;
  CHECK(relative_difference(d2 * gauss2, hankel_det(2, JumpWeightConfig::make(std::vector<double>{1}, std::vector<double>{1, -1}, P256))) <= Real::parse("1e-60", P256));
  const auto c2 = compare_with_determinant(estimate_probability(2, largest, N, 2024), d2);
  MESSAGE("n=2 largest p_det " << c2.p_det << " p_mc " << c2.mc.p_hat << " z " << c2.z_score);
  CHECK(c2.z_score <= 3.0);

  const auto inside = parse_region("0:1");
  const auto c4 = compare_with_determinant(estimate_probability(4, inside, N, 2025),
                                           determinant_probability(inside, 4, P256));
  MESSAGE("n=4 [0,1] p_det " << c4.p_det << " p_mc " << c4.mc.p_hat << " z " << c4.z_score);
  CHECK(c4.z_score <= 3.0);

  // spectral symmetry
  const auto sym = estimate_probabilities(3, {parse_region("-inf:-0.4"), parse_region("0.4:inf")}, N, 99);
  const double se = std::hypot(sym[0].std_err, sym[1].std_err);
  CHECK(std::abs(sym[0].p_hat - sym[1].p_hat) <= 3 * se);
  MESSAGE("elapsed " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s");
}

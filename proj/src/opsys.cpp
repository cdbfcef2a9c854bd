#include "jumphankel/opsys.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "jumphankel/errors.hpp"
#include "jumphankel/ladder.hpp"

namespace jumphankel {

Real OPSystem::log_det(int n) const {
  Real s(precision());
  for (int k = 0; k < n; ++k) s = s + log(h.at(static_cast<size_t>(k)));
  return s;
}

OPSystem build_op_system(const JumpWeightConfig& config, int n_max) {
  if (n_max < 1) throw std::invalid_argument("build_op_system: n_max must be >= 1");
  const Precision p = config.precision();
  const size_t N = static_cast<size_t>(n_max) + 1;
  // mu up to 2 n_max + 1: the extra odd moment feeds alpha_{n_max}.
  const MomentTable mt = moments(config, static_cast<unsigned>(2 * n_max + 1));
  const auto& mu = mt.mu;

  std::vector<std::vector<Real>> L(N, std::vector<Real>(N, Real(p)));
  std::vector<Real> d(N, Real(p));
  for (size_t n = 0; n < N; ++n) {
    Real acc = mu[2 * n];
    for (size_t k = 0; k < n; ++k) acc = acc - square(L[n][k]) * d[k];
    if (!(acc > 0L))
      throw IllConditioned("Hankel pivot " + std::to_string(n) +
                           " is not positive at " + std::to_string(p.bits()) +
                           " bits; raise the precision");
    d[n] = acc;
    L[n][n] = Real(1L, p);
    for (size_t i = n + 1; i < N; ++i) {
      Real s = mu[i + n];
      for (size_t k = 0; k < n; ++k) s = s - L[i][k] * L[n][k] * d[k];
      L[i][n] = s / d[n];
    }
  }

  // Rows of L^{-1} are the monic orthogonal polynomials.
  std::vector<std::vector<Real>> C(N);
  for (size_t n = 0; n < N; ++n) {
    C[n].assign(n + 1, Real(p));
    C[n][n] = Real(1L, p);
    for (size_t j = 0; j < n; ++j) {
      Real s(p);
      for (size_t k = j; k < n; ++k) s = s + L[n][k] * C[k][j];
      C[n][j] = -s;
    }
  }

  // h_n = c^T H c with |mu_{i+j}| <= sqrt(mu_{2i} mu_{2j}), so
  // (sum_i |c_i| sqrt(mu_{2i}))^2 / h_n bounds the cancellation in every pivot
  // and inner product built from P_n.
  OPSystem sys{config, n_max, {}, {}, {}, {}, {}, Real(p)};
  Real worst_growth(1L, p);
  for (size_t n = 0; n < N; ++n) {
    Real s(p);
    for (size_t i = 0; i <= n; ++i) s = s + abs(C[n][i]) * sqrt(mu[2 * i]);
    worst_growth = max(worst_growth, square(s) / d[n]);
  }
  sys.pivot_accuracy = Real::pow2(-static_cast<long>(p.bits()), p) * worst_growth;
  if (sys.pivot_accuracy > Real::pow2(-static_cast<long>(p.bits() / 2), p))
    throw IllConditioned("Hankel factorization keeps fewer than half of the " +
                         std::to_string(p.bits()) + " working bits (estimated relative pivot " +
                         "accuracy " + sys.pivot_accuracy.to_string(4) +
                         "); raise the precision");

  sys.h = d;
  sys.alpha.reserve(N);
  for (size_t n = 0; n < N; ++n) {
    Real s(p);
    for (size_t i = 0; i <= n; ++i) {
      Real row(p);
      for (size_t j = 0; j <= n; ++j) row = row + C[n][j] * mu[i + j + 1];
      s = s + C[n][i] * row;
    }
    sys.alpha.push_back(s / d[n]);
  }
  sys.beta.assign(N, Real(p));
  for (size_t n = 1; n < N; ++n) sys.beta[n] = d[n] / d[n - 1];

  sys.coeffs.resize(N);
  sys.coeffs[0] = {Real(1L, p)};
  for (size_t n = 0; n + 1 < N; ++n) {
    std::vector<Real> next(n + 2, Real(p));
    for (size_t j = 0; j <= n; ++j) {
      next[j + 1] = next[j + 1] + sys.coeffs[n][j];
      next[j] = next[j] - sys.alpha[n] * sys.coeffs[n][j];
    }
    if (n >= 1)
      for (size_t j = 0; j < n; ++j) next[j] = next[j] - sys.beta[n] * sys.coeffs[n - 1][j];
    next[n + 1] = Real(1L, p);
    sys.coeffs[n + 1] = std::move(next);
  }
  sys.p_sub.assign(N, Real(p));
  for (size_t n = 1; n < N; ++n) sys.p_sub[n] = sys.coeffs[n][n - 1];
  return sys;
}

Real hankel_det(int n, const JumpWeightConfig& config) {
  if (n < 1) throw std::invalid_argument("hankel_det: n must be >= 1");
  return build_op_system(config, std::max(n - 1, 1)).det(n);
}

Real hankel_det_direct(int n, const JumpWeightConfig& config) {
  if (n < 1) throw std::invalid_argument("hankel_det_direct: n must be >= 1");
  const Precision p = config.precision();
  const auto mu = moments(config, static_cast<unsigned>(2 * n - 2)).mu;
  const size_t N = static_cast<size_t>(n);
  std::vector<std::vector<Real>> a(N, std::vector<Real>(N, Real(p)));
  for (size_t i = 0; i < N; ++i)
    for (size_t j = 0; j < N; ++j) a[i][j] = mu[i + j];
  Real det(1L, p);
  for (size_t c = 0; c < N; ++c) {
    size_t piv = c;
    for (size_t r = c + 1; r < N; ++r)
      if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
    if (a[piv][c].is_zero()) return Real(p);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det = det * a[c][c];
    for (size_t r = c + 1; r < N; ++r) {
      Real f = a[r][c] / a[c][c];
      for (size_t j = c; j < N; ++j) a[r][j] = a[r][j] - f * a[c][j];
    }
  }
  return det;
}

PolyValue eval_P(const OPSystem& sys, int n, const Real& z) {
  if (n < 0 || n > sys.n_max) throw std::out_of_range("eval_P: degree out of range");
  const Precision p = sys.precision();
  Real prev(p), prev_d(p);        // P_{-1} = 0
  Real cur(1L, p), cur_d(p);      // P_0 = 1
  for (int k = 0; k < n; ++k) {
    const auto kk = static_cast<size_t>(k);
    const Real shift = z - sys.alpha[kk];
    Real next = shift * cur - sys.beta[kk] * prev;
    Real next_d = cur + shift * cur_d - sys.beta[kk] * prev_d;
    prev = std::move(cur);
    prev_d = std::move(cur_d);
    cur = std::move(next);
    cur_d = std::move(next_d);
  }
  return {cur, cur_d};
}

Real eval_P_horner(const OPSystem& sys, int n, const Real& z) {
  const auto& c = sys.coeffs.at(static_cast<size_t>(n));
  Real v(sys.precision());
  for (size_t j = c.size(); j-- > 0;) v = v * z + c[j];
  return v;
}

Real cd_kernel(const OPSystem& sys, int n, const Real& x, const Real& y) {
  Real s(sys.precision());
  for (int k = 0; k < n; ++k)
    s = s + eval_P(sys, k, x).value * eval_P(sys, k, y).value / sys.h[static_cast<size_t>(k)];
  return s;
}

Real cd_kernel_closed(const OPSystem& sys, int n, const Real& x, const Real& y) {
  const Real pnx = eval_P(sys, n, x).value, pny = eval_P(sys, n, y).value;
  const Real pmx = eval_P(sys, n - 1, x).value, pmy = eval_P(sys, n - 1, y).value;
  return (pnx * pmy - pmx * pny) / (sys.h[static_cast<size_t>(n - 1)] * (x - y));
}

LadderAB ladder_AB(const JumpWeightConfig& config, const LadderState& state, const Real& z) {
  const Precision p = config.precision();
  LadderAB out{Real(2L, p), Real(p)};
  for (int k = 0; k < config.m(); ++k) {
    const auto kk = static_cast<size_t>(k);
    const Real gap = z - config.t()[kk];
    if (gap.is_zero())
      throw PoleAtJump("A_n, B_n have a pole at t_" + std::to_string(k + 1) + " = " +
                       z.to_string(12));
    out.A = out.A + state.R[kk] / gap;
    out.B = out.B + state.r[kk] / gap;
  }
  return out;
}

std::vector<Real> identity_sample_points(const JumpWeightConfig& config) {
  const Precision p = config.precision();
  std::vector<Real> pts;
  const auto& t = config.t();
  if (!t.empty()) {
    pts.push_back(t.front() - Real::parse("0.7", p));
    for (size_t k = 0; k + 1 < t.size(); ++k) pts.push_back((t[k] + t[k + 1]) / 2L);
    pts.push_back(t.back() + Real::parse("0.9", p));
  }
  pts.push_back(Real::parse("2.3", p));
  pts.push_back(Real::parse("-1.6", p));
  // fillers, used only while fewer than five points survive
  for (const char* f : {"0.45", "-0.35", "1.15", "-2.55", "3.05"})
    pts.push_back(Real::parse(f, p));
  std::vector<Real> out;
  for (size_t i = 0; i < pts.size(); ++i) {
    const Real& z = pts[i];
    if (i >= pts.size() - 5 && out.size() >= 5) break;
    bool bad = std::any_of(t.begin(), t.end(), [&](const Real& tk) { return tk == z; }) ||
               std::any_of(out.begin(), out.end(), [&](const Real& q) { return q == z; });
    if (!bad) out.push_back(z);
  }
  return out;
}

ResidualReport check_function_identities(const OPSystem& sys,
                                         std::span<const LadderState> states, int n,
                                         std::span<const Real> z_samples) {
  if (n + 1 > sys.n_max || static_cast<int>(states.size()) < n + 2)
    throw std::invalid_argument("check_function_identities: need degrees up to n + 1");
  const auto& cfg = sys.config;
  const auto un = static_cast<size_t>(n);
  ResidualReport rep;
  for (const Real& z : z_samples) {
    const Real two_z = 2L * z;
    const auto Pn = eval_P(sys, n, z);
    const LadderAB ab_n = ladder_AB(cfg, states[un], z);
    const LadderAB ab_n1 = ladder_AB(cfg, states[un + 1], z);
    const Real shift = z - sys.alpha[un];

    // (S1): B_{n+1} + B_n = (z - alpha_n) A_n - 2z
    rep.add_scaled("S1", n, 0, ab_n1.B + ab_n.B - shift * ab_n.A + two_z,
                   max(max(abs(ab_n1.B), abs(ab_n.B)), max(abs(shift * ab_n.A), abs(two_z))));
    if (n < 1) continue;

    const auto Pm = eval_P(sys, n - 1, z);
    const LadderAB ab_m = ladder_AB(cfg, states[un - 1], z);
    // Lowering: P_n' = beta_n A_n P_{n-1} - B_n P_n
    const Real low_a = sys.beta[un] * ab_n.A * Pm.value, low_b = ab_n.B * Pn.value;
    rep.add_scaled("lowering", n, 0, Pn.derivative - low_a + low_b,
                   max(abs(Pn.derivative), max(abs(low_a), abs(low_b))));
    // Raising: P_{n-1}' = (B_n + 2z) P_{n-1} - A_{n-1} P_n
    const Real up_a = (ab_n.B + two_z) * Pm.value, up_b = ab_m.A * Pn.value;
    rep.add_scaled("raising", n, 0, Pm.derivative - up_a + up_b,
                   max(abs(Pm.derivative), max(abs(up_a), abs(up_b))));
    // (S2): 1 + (z - alpha_n)(B_{n+1} - B_n) = beta_{n+1} A_{n+1} - beta_n A_{n-1}
    const Real s2_l = shift * (ab_n1.B - ab_n.B);
    const Real s2_a = sys.beta[un + 1] * ab_n1.A, s2_b = sys.beta[un] * ab_m.A;
    rep.add_scaled("S2", n, 0, Real(1L, z.precision()) + s2_l - s2_a + s2_b,
                   max(max(Real(1L, z.precision()), abs(s2_l)), max(abs(s2_a), abs(s2_b))));
    // (S2'): B_n^2 + 2z B_n + sum_{j<n} A_j = beta_n A_n A_{n-1}
    Real sumA(sys.precision()), sumA_scale(sys.precision());
    for (size_t j = 0; j < un; ++j) {
      Real a = ladder_AB(cfg, states[j], z).A;
      sumA_scale = max(sumA_scale, abs(a));
      sumA = sumA + a;
    }
    const Real b2 = square(ab_n.B), zb = two_z * ab_n.B;
    const Real rhs = sys.beta[un] * ab_n.A * ab_m.A;
    rep.add_scaled("S2'", n, 0, b2 + zb + sumA - rhs,
                   max(max(b2, abs(zb)), max(max(abs(sumA), sumA_scale), abs(rhs))));
  }
  return rep;
}

Real gaussian_partition_function(int n, Precision p) {
  if (n < 0) throw std::invalid_argument("gaussian_partition_function: n must be >= 0");
  Real v = pow(sqrt(Real::pi(p)), n);
  v = ldexp(v, -static_cast<long>(n) * (n - 1) / 2);
  Real fact(1L, p);
  for (int j = 2; j <= n; ++j) {
    fact = fact * j;
    v = v * fact;
  }
  return n >= 1 ? v / fact : v;
}

ResidualReport check_heine(const OPSystem& sys, int n_hi) {
  if (n_hi < 1 || n_hi >= sys.n_max) throw std::invalid_argument("check_heine: need 1 <= n_hi < n_max");
  std::vector<Real> D{Real(1L, sys.precision())};
  for (int n = 1; n <= n_hi + 1; ++n) D.push_back(hankel_det_direct(n, sys.config));
  ResidualReport rep;
  for (int n = 1; n <= n_hi; ++n) {
    const auto un = static_cast<size_t>(n);
    rep.add("heine", n, 0, sys.h[un] / sys.h[un - 1], D[un + 1] * D[un - 1] / square(D[un]));
  }
  return rep;
}

}  // namespace jumphankel

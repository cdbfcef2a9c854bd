#include "jumphankel/ladder.hpp"

#include <string>

#include "jumphankel/errors.hpp"

namespace jumphankel {

LadderState compute_ladder(const OPSystem& sys, int n) {
  if (n < 0 || n > sys.n_max) throw std::out_of_range("compute_ladder: degree out of range");
  const auto& cfg = sys.config;
  const Precision p = cfg.precision();
  const auto un = static_cast<size_t>(n);
  LadderState st{n, std::vector<Real>(static_cast<size_t>(cfg.m()), Real(p)),
                 std::vector<Real>(static_cast<size_t>(cfg.m()), Real(p))};
  for (int k = 1; k <= cfg.m(); ++k) {
    const auto kk = static_cast<size_t>(k - 1);
    const Real& w = cfg.omega_jump(k);
    if (w.is_zero()) continue;
    const Real& tk = cfg.t()[kk];
    const Real wt = w * exp(-square(tk));
    const Real pn = eval_P(sys, n, tk).value;
    st.R[kk] = wt * square(pn) / sys.h[un];
    if (n >= 1) st.r[kk] = wt * pn * eval_P(sys, n - 1, tk).value / sys.h[un - 1];
  }
  return st;
}

std::vector<LadderState> compute_ladder_states(const OPSystem& sys, int n_hi) {
  std::vector<LadderState> out;
  out.reserve(static_cast<size_t>(n_hi) + 1);
  for (int n = 0; n <= n_hi; ++n) out.push_back(compute_ladder(sys, n));
  return out;
}

namespace {

Real sum_of(const std::vector<Real>& v, Precision p) {
  Real s(p);
  for (const auto& x : v) s = s + x;
  return s;
}

Real max_abs_of(std::initializer_list<Real> xs) {
  Real m;
  for (const auto& x : xs) m = max(m, abs(x));
  return m;
}

}  // namespace

ResidualReport check_coefficient_identities(const OPSystem& sys,
                                            std::span<const LadderState> states, int n) {
  if (n < 1 || n + 1 > sys.n_max || static_cast<int>(states.size()) < n + 2)
    throw std::invalid_argument("check_coefficient_identities: need 1 <= n and states to n + 1");
  const auto& cfg = sys.config;
  const Precision p = cfg.precision();
  const auto un = static_cast<size_t>(n);
  const int m = cfg.m();
  const auto& Rn = states[un].R;
  const auto& Rm = states[un - 1].R;
  const auto& rn = states[un].r;
  const auto& rp = states[un + 1].r;
  const Real& alpha = sys.alpha[un];
  const Real& beta = sys.beta[un];
  const Real sumR = sum_of(Rn, p);
  const Real sumr = sum_of(rn, p);
  const Real nn(static_cast<long>(n), p);

  ResidualReport rep;
  rep.add("s1-1", n, 0, 2L * alpha, sumR);
  rep.add("alR", n, 0, alpha, sumR / 2L);
  rep.add("s2'-1", n, 0, 2L * sumr + 2L * nn, 4L * beta);
  rep.add("btr", n, 0, beta, (sumr + nn) / 2L);

  for (int k = 1; k <= m; ++k) {
    const auto kk = static_cast<size_t>(k - 1);
    const Real& tk = cfg.t()[kk];
    rep.add("s1-2", n, k, rp[kk] + rn[kk], (tk - alpha) * Rn[kk]);
    rep.add("s2'-3", n, k, square(rn[kk]), beta * Rn[kk] * Rm[kk]);

    // (z - t_k)^{-1} balance of (S2').
    Real cross_l(p), cross_r(p);
    for (int j = 1; j <= m; ++j) {
      if (j == k) continue;
      const auto jj = static_cast<size_t>(j - 1);
      const Real dt = tk - cfg.t()[jj];
      cross_l = cross_l + 2L * rn[kk] * rn[jj] / dt;
      cross_r = cross_r + (Rn[kk] * Rm[jj] + Rm[kk] * Rn[jj]) / dt;
    }
    Real past(p);
    for (size_t j = 0; j < un; ++j) past = past + states[j].R[kk];
    const Real lhs_t = 2L * tk * rn[kk];
    const Real rhs_c = beta * cross_r;
    const Real rhs_d = 2L * beta * (Rn[kk] + Rm[kk]);
    rep.add_scaled("s2'-2", n, k, cross_l + past + lhs_t - rhs_c - rhs_d,
                   max_abs_of({cross_l, past, lhs_t, rhs_c, rhs_d}));
  }

  // p(n, t) two ways.
  Real past_all(p);
  for (size_t j = 0; j < un; ++j) past_all = past_all + sum_of(states[j].R, p);
  rep.add("p-1", n, 0, sys.p_sub[un], -past_all / 2L);

  Real ratio(p), tr(p);
  for (int k = 1; k <= m; ++k) {
    const auto kk = static_cast<size_t>(k - 1);
    if (!Rn[kk].is_zero()) ratio = ratio + square(rn[kk]) / Rn[kk];
    tr = tr + cfg.t()[kk] * rn[kk];
  }
  const Real first = -(sumr + nn) * sumR / 2L;
  rep.add_scaled("p-2", n, 0, sys.p_sub[un] - (first - ratio + tr),
                 max_abs_of({sys.p_sub[un], first, ratio, tr}));
  return rep;
}

DifferenceIteration iterate_difference(const JumpWeightConfig& config, int n_max) {
  if (n_max < 0) throw std::invalid_argument("iterate_difference: n_max must be >= 0");
  const Precision p = config.precision();
  const int m = config.m();
  const Real floor = Real::pow2(-static_cast<long>(p.bits() / 2), p);
  DifferenceIteration out;
  for (int k = 1; k <= m; ++k) {
    if (config.omega_jump(k).is_zero())
      out.pinned.push_back(k);
    else if (out.pivot == 0)
      out.pivot = k;
  }
  auto active = [&](size_t kk) { return !config.omega_jump(static_cast<int>(kk) + 1).is_zero(); };

  const Real mu0 = moments(config, 0).mu[0];
  LadderState s0{0, std::vector<Real>(static_cast<size_t>(m), Real(p)),
                 std::vector<Real>(static_cast<size_t>(m), Real(p))};
  for (size_t kk = 0; kk < static_cast<size_t>(m); ++kk)
    if (active(kk)) s0.R[kk] = config.omega()[kk + 1] * exp(-square(config.t()[kk])) / mu0;
  out.states.push_back(std::move(s0));
  if (out.pivot == 0) {
    for (int n = 1; n <= n_max; ++n) out.states.push_back(LadderState{n, out.states[0].R, out.states[0].r});
    return out;
  }
  const auto pv = static_cast<size_t>(out.pivot - 1);

  for (int n = 0; n < n_max; ++n) {
    const LadderState& cur = out.states.back();
    LadderState next{n + 1, std::vector<Real>(static_cast<size_t>(m), Real(p)),
                     std::vector<Real>(static_cast<size_t>(m), Real(p))};
    const Real half_sumR = sum_of(cur.R, p) / 2L;
    for (size_t kk = 0; kk < static_cast<size_t>(m); ++kk)
      if (active(kk)) next.r[kk] = -cur.r[kk] + (config.t()[kk] - half_sumR) * cur.R[kk];

    const Real denom_p = (sum_of(next.r, p) + static_cast<long>(n + 1)) * cur.R[pv];
    if (abs(denom_p) < floor)
      throw DegenerateIteration("denominator (sum r + n) R_{n-1,1} vanishes at n = " +
                                std::to_string(n + 1) + ", k = " + std::to_string(out.pivot) +
                                "; use the direct route (compute_ladder)");
    next.R[pv] = 2L * square(next.r[pv]) / denom_p;
    for (size_t kk = 0; kk < static_cast<size_t>(m); ++kk) {
      if (kk == pv || !active(kk)) continue;
      const Real denom = square(next.r[pv]) * cur.R[kk];
      if (abs(denom) < floor)
        throw DegenerateIteration("denominator r_{n,1}^2 R_{n-1,k} vanishes at n = " +
                                  std::to_string(n + 1) + ", k = " + std::to_string(kk + 1) +
                                  "; use the direct route (compute_ladder)");
      next.R[kk] = square(next.r[kk]) * cur.R[pv] / denom * next.R[pv];
    }
    out.states.push_back(std::move(next));
  }
  return out;
}

}  // namespace jumphankel

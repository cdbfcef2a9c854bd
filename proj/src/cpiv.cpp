#include "jumphankel/cpiv.hpp"

#include <cmath>
#include <string>

#include "jumphankel/errors.hpp"
#include "jumphankel/finite_difference.hpp"

namespace jumphankel {

namespace {

Real sum_of(const std::vector<Real>& v, Precision p) {
  Real s(p);
  for (const auto& x : v) s = s + x;
  return s;
}

Real dot(const std::vector<Real>& u, const std::vector<Real>& v, Precision p) {
  Real s(p);
  for (size_t i = 0; i < u.size(); ++i) s = s + u[i] * v[i];
  return s;
}

std::vector<bool> pinned_channels(const std::vector<Real>& omega) {
  std::vector<bool> out;
  for (size_t k = 1; k < omega.size(); ++k) out.push_back(omega[k].is_zero());
  return out;
}

}  // namespace

PIVState piv_from_ladder(const Real& x, const LadderState& state) {
  const Precision p = x.precision();
  const Real lead = sum_of(state.r, p) + state.n;
  PIVState s{x, {}, {}, Real(p)};
  for (size_t k = 0; k < state.R.size(); ++k) {
    if (state.R[k].is_zero() || state.r[k].is_zero()) {
      s.a.push_back(Real(p));
      s.b.push_back(Real(p));
      continue;
    }
    s.a.push_back(square(state.r[k]) / (state.R[k] * lead));
    s.b.push_back(state.R[k] * lead / state.r[k]);
  }
  return s;
}

PIVState map_to_piv(const JumpWeightConfig& config, int n) {
  if (n < 1) throw std::invalid_argument("map_to_piv: n must be >= 1");
  if (config.m() < 1) throw ConfigError("t", "the coupled system needs at least one jump");
  const Real& w0 = config.omega()[0];
  if (w0.is_zero())
    throw NotNormalizable("omega_0 = 0: the weight cannot be scaled to the omega_0 = 1 convention");
  const Precision p = config.precision();
  const auto sys = build_op_system(config, n);
  const auto st = compute_ladder(sys, n);
  const Real floor = Real::pow2(-static_cast<long>(p.bits() / 2), p);
  for (int k = 1; k <= config.m(); ++k) {
    const auto kk = static_cast<size_t>(k - 1);
    if (!config.omega_jump(k).is_zero() && abs(st.r[kk]) < floor)
      throw ZeroChannel("map_to_piv: r_{n," + std::to_string(k) + "} vanishes at x = " +
                        config.t()[0].to_string(12) + " (b_" + std::to_string(k) + " has a pole)");
  }
  PIVState s = piv_from_ladder(config.t()[0], st);
  // h_{n-1} of the weight divided by omega_0
  s.y_alias = 4L * Real::pi(p) * exp(-square(s.x)) * w0 / sys.h[static_cast<size_t>(n - 1)];
  return s;
}

LadderState ladder_from_piv(const PIVState& s, int n) {
  const Precision p = s.x.precision();
  const Real lead = dot(s.a, s.b, p) + n;
  LadderState st{n, {}, {}};
  for (size_t k = 0; k < s.a.size(); ++k) {
    st.R.push_back(s.a[k] * square(s.b[k]) / lead);
    st.r.push_back(s.a[k] * s.b[k]);
  }
  return st;
}

Real piv_hamiltonian(const PIVState& s, const std::vector<Real>& c, int n) {
  const Precision p = s.x.precision();
  const Real sa = sum_of(s.a, p), ab = dot(s.a, s.b, p);
  Real h = -2L * (ab + n) * sa;
  for (size_t k = 0; k < s.a.size(); ++k)
    h = h + 2L * s.a[k] * s.b[k] * (s.x + c[k]) - s.a[k] * square(s.b[k]);
  return h;
}

PIVRates piv_rhs(const PIVState& s, const std::vector<Real>& c, int n,
                 const std::vector<bool>& pinned) {
  const Precision p = s.x.precision();
  const Real sa = sum_of(s.a, p), ab = dot(s.a, s.b, p);
  PIVRates out;
  for (size_t k = 0; k < s.a.size(); ++k) {
    if (pinned[k]) {
      out.da.push_back(Real(p));
      out.db.push_back(Real(p));
      continue;
    }
    const Real shift = sa - s.x - c[k];
    out.da.push_back(-2L * s.a[k] * (shift + s.b[k]));
    out.db.push_back(square(s.b[k]) + 2L * s.b[k] * shift + 2L * (ab + n));
  }
  return out;
}

ResidualReport check_piv_maps(const JumpWeightConfig& config, int n) {
  const Precision p = config.precision();
  const PIVState s = map_to_piv(config, n);
  const auto sys = build_op_system(config, n);
  const auto st = compute_ladder(sys, n);
  const auto prev = compute_ladder(sys, n - 1);
  const LadderState back = ladder_from_piv(s, n);
  const PIVState again = piv_from_ladder(s.x, back);
  ResidualReport rep;
  for (int k = 1; k <= config.m(); ++k) {
    const auto kk = static_cast<size_t>(k - 1);
    rep.add("piv-roundtrip-Rr", n, k, back.R[kk], st.R[kk]);
    rep.add("piv-roundtrip-Rr", n, k, back.r[kk], st.r[kk]);
    rep.add("piv-roundtrip-ab", n, k, again.a[kk], s.a[kk]);
    rep.add("piv-roundtrip-ab", n, k, again.b[kk], s.b[kk]);
    rep.add("piv-akR", n, k, s.a[kk], prev.R[kk] / 2L);
  }
  rep.add("piv-btab", n, 0, sys.beta[static_cast<size_t>(n)], (dot(s.a, s.b, p) + n) / 2L);
  const auto path = DiagonalPath::through(config);
  rep.add("piv-sigma", n, 0, piv_hamiltonian(s, path.c(), n), 2L * sys.p_sub[static_cast<size_t>(n)]);
  return rep;
}

PIVState PIVTrajectory::at(const Real& x) const {
  const auto& N = nodes_;
  size_t i = 0;
  const bool forward = N.back().x >= N.front().x;
  while (i + 2 < N.size() && (forward ? N[i + 1].x < x : N[i + 1].x > x)) ++i;
  if (N.size() == 1) return N[0];
  const PIVState& s0 = N[i];
  const PIVState& s1 = N[i + 1];
  const Real h = s1.x - s0.x;
  const Real th = (x - s0.x) / h;
  const Real th2 = square(th), th3 = th2 * th;
  const Real h00 = 2L * th3 - 3L * th2 + 1L, h10 = th3 - 2L * th2 + th, h01 = -2L * th3 + 3L * th2,
             h11 = th3 - th2;
  PIVState out{x, {}, {}, Real(x.precision())};
  for (size_t k = 0; k < s0.a.size(); ++k) {
    out.a.push_back(h00 * s0.a[k] + h10 * h * rates_[i].da[k] + h01 * s1.a[k] + h11 * h * rates_[i + 1].da[k]);
    out.b.push_back(h00 * s0.b[k] + h10 * h * rates_[i].db[k] + h01 * s1.b[k] + h11 * h * rates_[i + 1].db[k]);
  }
  return out;
}

namespace {

// Dormand-Prince 5(4) tableau.
struct Tableau {
  std::vector<std::vector<Real>> a;
  std::vector<Real> c, b, e;  // e = b - b*
};

Tableau dopri(Precision p) {
  auto q = [p](long num, long den) { return Real(num, p) / den; };
  Tableau t;
  t.c = {Real(p), q(1, 5), q(3, 10), q(4, 5), q(8, 9), q(1, 1), q(1, 1)};
  t.a = {{},
         {q(1, 5)},
         {q(3, 40), q(9, 40)},
         {q(44, 45), q(-56, 15), q(32, 9)},
         {q(19372, 6561), q(-25360, 2187), q(64448, 6561), q(-212, 729)},
         {q(9017, 3168), q(-355, 33), q(46732, 5247), q(49, 176), q(-5103, 18656)},
         {q(35, 384), Real(p), q(500, 1113), q(125, 192), q(-2187, 6784), q(11, 84)}};
  t.b = t.a[6];
  t.b.push_back(Real(p));
  const std::vector<Real> bs = {q(5179, 57600), Real(p), q(7571, 16695), q(393, 640),
                                q(-92097, 339200), q(187, 2100), q(1, 40)};
  for (size_t i = 0; i < 7; ++i) t.e.push_back(t.b[i] - bs[i]);
  return t;
}

using Vec = std::vector<Real>;

Vec pack(const PIVState& s) {
  Vec y = s.a;
  y.insert(y.end(), s.b.begin(), s.b.end());
  return y;
}

Vec pack(const PIVRates& r) {
  Vec y = r.da;
  y.insert(y.end(), r.db.begin(), r.db.end());
  return y;
}

PIVState unpack(const Real& x, const Vec& y) {
  const auto m = y.size() / 2;
  PIVState s{x, Vec(y.begin(), y.begin() + static_cast<long>(m)), Vec(y.begin() + static_cast<long>(m), y.end()),
             Real(x.precision())};
  return s;
}

}  // namespace

PIVTrajectory integrate_cpiv(const PIVState& init, const DiagonalPath& path, int n, const Real& x1,
                             const Real& tol) {
  if (!(tol > 0L)) throw std::invalid_argument("integrate_cpiv: tol must be > 0");
  const Precision p = path.precision();
  const auto pinned = pinned_channels(path.omega());
  const auto& c = path.c();
  auto f = [&](const Real& x, const Vec& y) { return pack(piv_rhs(unpack(x, y), c, n, pinned)); };

  std::vector<PIVState> nodes{init};
  std::vector<PIVRates> rates{piv_rhs(init, c, n, pinned)};
  if (x1 == init.x) return PIVTrajectory(std::move(nodes), std::move(rates), 0);

  const Tableau T = dopri(p);
  const Real span = x1 - init.x;
  const int dir = span.sign();
  const Real h_min = Real::pow2(-static_cast<long>(p.bits() / 4), p);
  Real h = abs(span) / 16L;
  Real x = init.x;
  Vec y = pack(init);
  Vec k1 = pack(rates.back());
  long rejected = 0;
  const size_t dim = y.size();

  while (dir * (x1 - x) > 0L) {
    if (h < h_min)
      throw StepUnderflow("step " + h.to_string(4) + " below 2^-" + std::to_string(p.bits() / 4) +
                          " at x = " + x.to_string(16) + " (likely a movable pole)");
    bool last = false;
    if (h >= abs(x1 - x)) {
      h = abs(x1 - x);
      last = true;
    }
    const Real hs = dir * h;
    std::vector<Vec> k(7);
    k[0] = k1;
    for (size_t s = 1; s < 7; ++s) {
      Vec ys = y;
      for (size_t j = 0; j < s; ++j) {
        if (T.a[s][j].is_zero()) continue;
        for (size_t i = 0; i < dim; ++i) ys[i] = ys[i] + hs * T.a[s][j] * k[j][i];
      }
      k[s] = f(x + T.c[s] * hs, ys);
    }
    Vec y_new = y;
    for (size_t s = 0; s < 6; ++s)
      for (size_t i = 0; i < dim; ++i) y_new[i] = y_new[i] + hs * T.b[s] * k[s][i];
    // k[6] was evaluated at y_new (first-same-as-last)
    double err = 0.0;
    for (size_t i = 0; i < dim; ++i) {
      Real e(p);
      for (size_t s = 0; s < 7; ++s) e = e + T.e[s] * k[s][i];
      const Real scale = tol * max(Real(1L, p), max(abs(y[i]), abs(y_new[i])));
      err = std::max(err, (abs(hs * e) / scale).to_double());
    }
    if (!std::isfinite(err)) err = 1e300;
    const double factor = err == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
    if (err <= 1.0) {
      x = last ? x1 : x + hs;
      y = std::move(y_new);
      k1 = k[6];
      PIVState s = unpack(x, y);
      nodes.push_back(s);
      rates.push_back(piv_rhs(s, c, n, pinned));
      if (last) break;
    } else {
      ++rejected;
    }
    h = h * factor;
  }
  return PIVTrajectory(std::move(nodes), std::move(rates), rejected);
}

ResidualReport check_cpiv_trajectory(const DiagonalPath& path, int n, const PIVTrajectory& traj,
                                     bool second_order) {
  const Precision p = path.precision();
  const auto pinned = pinned_channels(path.omega());
  const auto& c = path.c();
  const size_t m = c.size();
  ResidualReport rep;
  const Real fd_h = Real::pow2(-10, p);
  const Real fine_tol = Real::parse("1e-25", p);

  for (size_t i = 0; i < traj.nodes().size(); ++i) {
    const PIVState& s = traj.nodes()[i];
    const PIVRates& rt = traj.rates()[i];
    const PIVState d = map_to_piv(path.at(s.x), n);
    for (size_t kk = 0; kk < m; ++kk) {
      if (pinned[kk]) continue;
      const int k = static_cast<int>(kk) + 1;
      rep.add("cpiv-traj", n, k, s.a[kk], d.a[kk]);
      rep.add("cpiv-traj", n, k, s.b[kk], d.b[kk]);

      // Hamiltonian structure
      auto H_b = [&](const Real& v) {
        PIVState q = s;
        q.b[kk] = v;
        return piv_hamiltonian(q, c, n);
      };
      auto H_a = [&](const Real& v) {
        PIVState q = s;
        q.a[kk] = v;
        return piv_hamiltonian(q, c, n);
      };
      rep.add("cpiv-hamilton", n, k, fd_first(H_b, s.b[kk], default_fd_step(s.b[kk], p)), rt.da[kk]);
      rep.add("cpiv-hamilton", n, k, -fd_first(H_a, s.a[kk], default_fd_step(s.a[kk], p)), rt.db[kk]);
    }

    if (!second_order) continue;
    // a_k'' by FD of a_k' over short re-integrations from this node
    Stencil5 da_k;
    std::vector<Stencil5> da(m);
    std::array<PIVState, 5> around;
    for (long off = -2; off <= 2; ++off) {
      const auto idx = static_cast<size_t>(off + 2);
      around[idx] = off == 0 ? s : integrate_cpiv(s, path, n, s.x + off * fd_h, fine_tol).back();
      const PIVRates r = piv_rhs(around[idx], c, n, pinned);
      for (size_t kk = 0; kk < m; ++kk) da[kk][idx] = r.da[kk];
    }
    const Real sa = sum_of(s.a, p);
    Real coupling(p);
    for (size_t j = 0; j < m; ++j) coupling = coupling + s.a[j] * (sa - s.x - c[j]);
    for (size_t kk = 0; kk < m; ++kk) {
      if (pinned[kk] || s.a[kk].is_zero()) continue;
      const Real a2 = fd_first_from(da[kk], fd_h);
      const Real t1 = square(rt.da[kk]) / (2L * s.a[kk]);
      const Real t2 = 4L * s.a[kk] * coupling;
      const Real t3 = 2L * s.a[kk] * square(sa - s.x - c[kk]);
      const Real t4 = 2L * (2L * n - 1L) * s.a[kk];
      Real scale;
      for (const Real& v : {a2, t1, t2, t3, t4}) scale = max(scale, abs(v));
      rep.add_scaled("cpiv-a2", n, static_cast<int>(kk) + 1, a2 - t1 - t2 - t3 + t4, scale);
    }
  }
  return rep;
}

}  // namespace jumphankel

#include "jumphankel/painleve.hpp"

#include <algorithm>
#include <string>

#include "jumphankel/errors.hpp"
#include "jumphankel/finite_difference.hpp"
#include "jumphankel/quadrature.hpp"

namespace jumphankel {

DiagonalPath DiagonalPath::make(std::vector<Real> c, std::vector<Real> omega, Precision p) {
  if (c.empty()) throw ConfigError("c", "a diagonal path needs at least one jump");
  if (!c.front().is_zero()) throw ConfigError("c", "c_1 must be 0");
  for (size_t k = 1; k < c.size(); ++k)
    if (!(c[k] > c[k - 1])) throw ConfigError("c", "offsets must be strictly increasing");
  for (auto& v : c) v = v.rounded_to(p);
  for (auto& v : omega) v = v.rounded_to(p);
  // weight checks on omega (and its length) are the config's
  JumpWeightConfig::make(c, omega, p);
  return DiagonalPath(std::move(c), std::move(omega), p);
}

DiagonalPath DiagonalPath::through(const JumpWeightConfig& config) {
  if (config.m() < 1) throw ConfigError("t", "a diagonal path needs at least one jump");
  std::vector<Real> c;
  for (const auto& t : config.t()) c.push_back(t - config.t().front());
  return DiagonalPath(std::move(c), config.omega(), config.precision());
}

JumpWeightConfig DiagonalPath::at(const Real& x) const {
  std::vector<Real> t;
  t.reserve(c_.size());
  for (const auto& ck : c_) t.push_back(x + ck);
  return JumpWeightConfig::make(std::move(t), omega_, prec_);
}

Real log_hankel(const JumpWeightConfig& config, int n) {
  if (n < 0) throw std::invalid_argument("log_hankel: n must be >= 0");
  if (n == 0) return Real(config.precision());
  return build_op_system(config, std::max(n - 1, 1)).log_det(n);
}

Real sigma_value(const JumpWeightConfig& config, int n) {
  if (n < 0) throw std::invalid_argument("sigma_value: n must be >= 0");
  if (n == 0) return Real(config.precision());
  return 2L * build_op_system(config, std::max(n, 1)).p_sub[static_cast<size_t>(n)];
}

namespace {

Real zero_floor(Precision p) { return Real::pow2(-static_cast<long>(p.bits() / 2), p); }

Real step_for(const Real& at, Precision p, const std::optional<Real>& step) {
  if (step) {
    if (!(*step > 0L)) throw std::invalid_argument("finite-difference step must be > 0");
    return step->rounded_to(p);
  }
  return default_fd_step(at, p);
}

void check_room(const JumpWeightConfig& config, int k, const Real& h) {
  const auto& t = config.t();
  const auto kk = static_cast<size_t>(k - 1);
  const Real reach = 2L * h;
  if ((kk > 0 && !(t[kk] - reach > t[kk - 1])) || (kk + 1 < t.size() && !(t[kk] + reach < t[kk + 1])))
    throw StepCollision("finite-difference stencil around t_" + std::to_string(k) + " = " +
                        t[kk].to_string(8) + " with step " + h.to_string(4) +
                        " crosses a neighbouring jump");
}

void check_channel(int k, const Real& omega, const Real& R, const char* where) {
  if (!omega.is_zero() && abs(R) < zero_floor(R.precision()))
    throw ZeroChannel(std::string(where) + ": R vanishes on channel " + std::to_string(k) +
                      " although omega_" + std::to_string(k) + " != 0");
}

Real sum_of(const std::vector<Real>& v, Precision p) {
  Real s(p);
  for (const auto& x : v) s = s + x;
  return s;
}

Real largest(std::initializer_list<Real> xs) {
  Real m;
  for (const auto& x : xs) m = max(m, abs(x));
  return m;
}

template <class F>
Real partial_in_t(const JumpWeightConfig& config, int k, const std::optional<Real>& step, F&& f) {
  if (k < 1 || k > config.m()) throw std::out_of_range("jump index out of range");
  const Precision p = config.precision();
  const Real& tk = config.t()[static_cast<size_t>(k - 1)];
  const Real h = step_for(tk, p, step);
  check_room(config, k, h);
  return fd_first([&](const Real& v) { return f(config.with_jump(k, v)); }, tk, h);
}

// Per-point data along a path, evaluated on the five-point stencil.
struct PathPoint {
  Real x;
  OPSystem sys;
  LadderState state;
};

std::array<PathPoint, 5> path_stencil(const DiagonalPath& path, int n_max, int n_state,
                                      const Real& x, const Real& h) {
  auto make = [&](long off) {
    const Real xi = x + off * h;
    OPSystem sys = build_op_system(path.at(xi), n_max);
    LadderState st = compute_ladder(sys, n_state);
    return PathPoint{xi, std::move(sys), std::move(st)};
  };
  return {make(-2), make(-1), make(0), make(1), make(2)};
}

}  // namespace

Real partial_lnD(const JumpWeightConfig& config, int n, int k, const std::optional<Real>& step) {
  return partial_in_t(config, k, step, [n](const JumpWeightConfig& c) { return log_hankel(c, n); });
}

Real partial_p(const JumpWeightConfig& config, int n, int k, const std::optional<Real>& step) {
  return partial_in_t(config, k, step, [n](const JumpWeightConfig& c) {
    return n == 0 ? Real(c.precision()) : build_op_system(c, std::max(n, 1)).p_sub[static_cast<size_t>(n)];
  });
}

ResidualReport check_partials(const JumpWeightConfig& config, int n, const std::optional<Real>& step) {
  const Precision p = config.precision();
  const auto sys = build_op_system(config, std::max(n, 1));
  const auto states = compute_ladder_states(sys, n);
  ResidualReport rep;
  for (int k = 1; k <= config.m(); ++k) {
    const auto kk = static_cast<size_t>(k - 1);
    Real past(p);
    for (int j = 0; j < n; ++j) past = past + states[static_cast<size_t>(j)].R[kk];
    rep.add("dlnD", n, k, partial_lnD(config, n, k, step), -past);
    rep.add("dp", n, k, partial_p(config, n, k, step), states[static_cast<size_t>(n)].r[kk]);
  }
  return rep;
}

ResidualReport check_toda(const DiagonalPath& path, int n, const Real& x,
                          const std::optional<Real>& step) {
  if (n < 1) throw std::invalid_argument("check_toda: n must be >= 1");
  const Precision p = path.precision();
  const Real h = step_for(x, p, step);
  const auto pts = path_stencil(path, n + 1, n, x, h);
  const auto un = static_cast<size_t>(n);
  Stencil5 lnbeta, alpha, lndhat;
  for (size_t i = 0; i < 5; ++i) {
    const auto& s = pts[i].sys;
    lnbeta[i] = log(s.beta[un]);
    alpha[i] = s.alpha[un];
    lndhat[i] = n * square(pts[i].x) + s.log_det(n);
  }
  const auto& c = pts[2].sys;
  const Real b0 = c.beta[un - 1], b1 = c.beta[un], b2 = c.beta[un + 1];

  ResidualReport rep;
  const Real d_lnbeta = fd_first_from(lnbeta, h);
  const Real rhs1 = 2L * (c.alpha[un - 1] - c.alpha[un]);
  rep.add_scaled("toda-beta", n, 0, d_lnbeta - rhs1, largest({d_lnbeta, c.alpha[un - 1], c.alpha[un]}));
  const Real d_alpha = fd_first_from(alpha, h);
  const Real rhs2 = 2L * (b1 - b2) + 1L;
  rep.add_scaled("toda-alpha", n, 0, d_alpha - rhs2, largest({d_alpha, 2L * b1, 2L * b2, Real(1L, p)}));
  const Real dd_lnbeta = fd_second_from(lnbeta, h);
  const Real rhs3 = 4L * (b0 - 2L * b1 + b2);
  rep.add_scaled("toda-2", n, 0, dd_lnbeta - rhs3, largest({dd_lnbeta, 4L * b0, 8L * b1, 4L * b2}));

  const JumpWeightConfig cfg = path.at(x);
  const Real dm = n == 1 ? Real(1L, p) : hankel_det_direct(n - 1, cfg);
  const Real ratio = hankel_det_direct(n + 1, cfg) * dm / square(hankel_det_direct(n, cfg));
  rep.add("toda-molecule", n, 0, fd_second_from(lndhat, h), 4L * ratio);
  return rep;
}

ResidualReport check_riccati(const DiagonalPath& path, int n, const Real& x,
                             const std::optional<Real>& step) {
  if (n < 0) throw std::invalid_argument("check_riccati: n must be >= 0");
  const Precision p = path.precision();
  const Real h = step_for(x, p, step);
  const auto pts = path_stencil(path, std::max(n, 1), n, x, h);
  const auto& st = pts[2].state;
  const Real sumR = sum_of(st.R, p), sumr = sum_of(st.r, p);
  ResidualReport rep;
  for (int k = 1; k <= path.m(); ++k) {
    const auto kk = static_cast<size_t>(k - 1);
    const Real& om = path.omega()[kk + 1];
    if (om.is_zero()) {
      rep.add_scaled("ric-R", n, k, Real(p), Real(p));
      rep.add_scaled("ric-r", n, k, Real(p), Real(p));
      continue;
    }
    check_channel(k, om, st.R[kk], "check_riccati");
    Stencil5 Rv, rv;
    for (size_t i = 0; i < 5; ++i) {
      Rv[i] = pts[i].state.R[kk];
      rv[i] = pts[i].state.r[kk];
    }
    const Real tk = x + path.c()[kk];
    const Real dR = fd_first_from(Rv, h);
    const Real a1 = (sumR - 2L * tk) * st.R[kk], a2 = 4L * st.r[kk];
    rep.add_scaled("ric-R", n, k, dR - a1 - a2, largest({dR, a1, a2}));
    const Real dr = fd_first_from(rv, h);
    const Real b1 = 2L * square(st.r[kk]) / st.R[kk], b2 = (sumr + n) * st.R[kk];
    rep.add_scaled("ric-r", n, k, dr - b1 + b2, largest({dr, b1, b2}));
  }
  return rep;
}

ResidualReport check_pde_R(const DiagonalPath& path, int n, const Real& x,
                           const std::optional<Real>& step) {
  if (n < 0) throw std::invalid_argument("check_pde_R: n must be >= 0");
  const Precision p = path.precision();
  const Real h = step_for(x, p, step);
  const auto pts = path_stencil(path, std::max(n, 1), n, x, h);
  const auto& st = pts[2].state;
  const Real sumR = sum_of(st.R, p);
  ResidualReport rep;
  for (int k = 1; k <= path.m(); ++k) {
    const auto kk = static_cast<size_t>(k - 1);
    const Real& om = path.omega()[kk + 1];
    if (om.is_zero()) {
      rep.add_scaled("pde-R", n, k, Real(p), Real(p));
      continue;
    }
    check_channel(k, om, st.R[kk], "check_pde_R");
    Stencil5 Rv;
    for (size_t i = 0; i < 5; ++i) Rv[i] = pts[i].state.R[kk];
    const Real& R = st.R[kk];
    const Real d1 = fd_first_from(Rv, h), d2 = fd_second_from(Rv, h);
    const Real tk = x + path.c()[kk];
    Real cross(p);
    for (size_t j = 0; j < st.R.size(); ++j) cross = cross + (2L * tk + path.c()[j] - path.c()[kk]) * st.R[j];
    const Real lhs2 = square(d1) / (2L * R);
    const Real q1 = R * (3L * square(sumR) / 2L), q2 = 2L * R * cross,
               q3 = 2L * R * (square(tk) - (2L * n + 1L));
    rep.add_scaled("pde-R", n, k, d2 - lhs2 - (q1 - q2 + q3), largest({d2, lhs2, q1, q2, q3}));
  }
  return rep;
}

SigmaSample sigma_sample(const JumpWeightConfig& config, int n, const std::optional<Real>& step) {
  if (n < 1) throw std::invalid_argument("sigma_sample: n must be >= 1");
  const int m = config.m();
  if (m < 1) throw ConfigError("t", "sigma sample needs at least one jump");
  const Precision p = config.precision();
  const auto sys = build_op_system(config, n);
  SigmaSample s;
  s.n = n;
  s.t = config.t();
  s.state = compute_ladder(sys, n);
  s.beta = sys.beta[static_cast<size_t>(n)];
  s.sigma = 2L * sys.p_sub[static_cast<size_t>(n)];

  const Real sumR = sum_of(s.state.R, p), sumr = sum_of(s.state.r, p);
  Real ratio(p), tr(p);
  for (int k = 1; k <= m; ++k) {
    const auto kk = static_cast<size_t>(k - 1);
    s.sgn.push_back(config.sign_of_jump(k));
    if (config.omega_jump(k).is_zero()) continue;
    check_channel(k, config.omega_jump(k), s.state.R[kk], "sigma_sample");
    ratio = ratio + square(s.state.r[kk]) / s.state.R[kk];
    tr = tr + s.t[kk] * s.state.r[kk];
  }
  s.sigma_rR = -(sumr + n) * sumR - 2L * ratio + 2L * tr;

  s.sigma_fd = Real(p);
  for (int k = 1; k <= m; ++k) s.sigma_fd = s.sigma_fd + partial_lnD(config, n, k, step);

  auto sig = [n](const JumpWeightConfig& c) { return sigma_value(c, n); };
  std::vector<Real> h(static_cast<size_t>(m), Real(p));
  for (int k = 1; k <= m; ++k) {
    const auto kk = static_cast<size_t>(k - 1);
    h[kk] = step_for(s.t[kk], p, step);
    check_room(config, k, h[kk]);
    s.grad.push_back(fd_first([&](const Real& v) { return sig(config.with_jump(k, v)); }, s.t[kk], h[kk]));
  }
  s.hess.assign(static_cast<size_t>(m), std::vector<Real>(static_cast<size_t>(m), Real(p)));
  for (int k = 1; k <= m; ++k) {
    const auto kk = static_cast<size_t>(k - 1);
    s.hess[kk][kk] = fd_second([&](const Real& v) { return sig(config.with_jump(k, v)); }, s.t[kk],
                               h[kk], s.sigma);
    for (int j = k + 1; j <= m; ++j) {
      const auto jj = static_cast<size_t>(j - 1);
      s.hess[kk][jj] = fd_mixed(
          [&](const Real& u, const Real& v) { return sig(config.with_jump(k, u).with_jump(j, v)); },
          s.t[kk], s.t[jj], h[kk], h[jj]);
      s.hess[jj][kk] = s.hess[kk][jj];
    }
  }

  s.L_sigma = sum_of(s.grad, p);
  const Real lead = s.L_sigma + 2L * n;
  for (int k = 1; k <= m; ++k) {
    const auto kk = static_cast<size_t>(k - 1);
    const Real row = sum_of(s.hess[kk], p);
    s.delta.push_back(square(row) + 4L * lead * square(s.grad[kk]));
    const Real root = sqrt(max(s.delta.back(), Real(p)));
    if (s.sgn[kk] == 0) {
      s.R_rec.push_back(Real(p));
      s.R_flipped.push_back(Real(p));
    } else {
      s.R_rec.push_back((-row + s.sgn[kk] * root) / (2L * lead));
      s.R_flipped.push_back((-row - s.sgn[kk] * root) / (2L * lead));
    }
  }
  return s;
}

ResidualReport check_sigma_routes(const SigmaSample& s) {
  const Precision p = s.sigma.precision();
  ResidualReport rep;
  rep.add("sigma-fd", s.n, 0, s.sigma_fd, s.sigma);
  rep.add("sigma-rR", s.n, 0, s.sigma_rR, s.sigma);
  rep.add("bt-Dsig", s.n, 0, s.beta, s.L_sigma / 4L + Real(s.n, p) / 2L);
  for (size_t kk = 0; kk < s.t.size(); ++kk) {
    const int k = static_cast<int>(kk) + 1;
    rep.add("r-sig", s.n, k, s.state.r[kk], s.grad[kk] / 2L);
    rep.add("R-sig", s.n, k, s.R_rec[kk], s.state.R[kk]);
    rep.add_scaled("delta-nonneg", s.n, k, max(Real(p), -s.delta[kk]), s.delta[kk]);
  }
  return rep;
}

ResidualReport check_sigma_pde(const SigmaSample& s) {
  const Precision p = s.sigma.precision();
  const size_t m = s.t.size();
  ResidualReport rep;
  Real lhs(p), tgrad(p), big(p);
  for (size_t kk = 0; kk < m; ++kk) {
    const Real term = s.sgn[kk] * sqrt(max(s.delta[kk], Real(p)));
    lhs = lhs + term;
    big = max(big, abs(term));
    tgrad = tgrad + s.t[kk] * s.grad[kk];
  }
  const Real rhs = 2L * (tgrad - s.sigma);
  rep.add_scaled("sigma-pde", s.n, 0, lhs - rhs, largest({big, 2L * tgrad, 2L * s.sigma}));
  if (m == 1) {
    const Real& d1 = s.grad[0];
    const Real& d2 = s.hess[0][0];
    const Real a = square(d2), b = 4L * (d1 + 2L * s.n) * square(d1), c = 4L * square(s.t[0] * d1 - s.sigma);
    rep.add_scaled("sigma-m1", s.n, 0, a + b - c, largest({a, b, c}));
  } else if (m == 2) {
    const Real e = 4L * square(s.t[0] * s.grad[0] + s.t[1] * s.grad[1] - s.sigma);
    const Real inner = e - s.delta[0] - s.delta[1];
    const Real a = square(inner), b = 4L * s.delta[0] * s.delta[1];
    rep.add_scaled("sigma-m2", s.n, 0, a - b, largest({a, b, square(e), square(s.delta[0]), square(s.delta[1])}));
  }
  return rep;
}

Real branch_flip_margin(const SigmaSample& s) {
  Real margin = Real::infinity(s.sigma.precision());
  for (size_t kk = 0; kk < s.t.size(); ++kk) {
    if (s.sgn[kk] == 0) continue;
    margin = min(margin, relative_difference(s.R_flipped[kk], s.state.R[kk]));
  }
  return margin;
}

IntegralRepresentation integral_representation(const DiagonalPath& path, int n, const Real& x1,
                                               const Real& tol, const std::optional<Real>& step) {
  if (n < 1) throw std::invalid_argument("integral_representation: n must be >= 1");
  const Precision p = path.precision();
  const Real zero(p);
  auto integrand = [&](const Real& y) {
    const Real h = step_for(y, p, step);
    const auto pts = path_stencil(path, n, n, y, h);
    const auto& st = pts[2].state;
    const Real sumR = sum_of(st.R, p);
    Real f = pow(sumR, 3) / 2L;
    Real tR(p);
    for (size_t kk = 0; kk < st.R.size(); ++kk) {
      const Real tk = y + path.c()[kk];
      tR = tR + 2L * tk * st.R[kk];
      f = f + 2L * square(tk) * st.R[kk];
      const Real& om = path.omega()[kk + 1];
      if (om.is_zero()) continue;
      check_channel(static_cast<int>(kk) + 1, om, st.R[kk], "integral_representation");
      Stencil5 Rv;
      for (size_t i = 0; i < 5; ++i) Rv[i] = pts[i].state.R[kk];
      f = f - square(fd_first_from(Rv, h)) / (2L * st.R[kk]);
    }
    return f - (tR + 4L * n) * sumR;
  };
  IntegralRepresentation out;
  const Real gauss = n * square(x1);
  if (x1.is_zero()) {
    out.value = Real(1L, p);
    out.quadrature_error = Real(p);
  } else {
    const auto q = tanh_sinh_integrate(integrand, zero, x1, tol);
    out.value = exp(gauss + q.value / 4L);
    out.quadrature_error = q.error_estimate;
  }
  out.direct = exp(gauss + log_hankel(path.at(x1), n) - log_hankel(path.at(zero), n));
  return out;
}

}  // namespace jumphankel

#include "commands.hpp"

#include <atomic>
#include <thread>

#include "jumphankel/cpiv.hpp"
#include "jumphankel/errors.hpp"
#include "jumphankel/gue_mc.hpp"
#include "jumphankel/ladder.hpp"
#include "jumphankel/opsys.hpp"
#include "jumphankel/painleve.hpp"

namespace jumphankel::cli {

namespace {

void need_n_at_least(const RunConfig& rc, int lo, const std::string& command) {
  if (rc.n_lo < lo)
    throw ConfigError("n", command + " needs n >= " + std::to_string(lo) + ", got " + std::to_string(rc.n_lo));
}

bool is_plain_gaussian(const JumpWeightConfig& cfg) {
  for (int k = 1; k <= cfg.m(); ++k)
    if (!cfg.omega_jump(k).is_zero()) return false;
  return cfg.omega()[0] == 1L;
}

std::string channel_role(const JumpWeightConfig& cfg, int k, int pivot) {
  if (cfg.omega_jump(k).is_zero()) return "pinned-zero";
  return k == pivot ? "pivot" : "active";
}

// The point-wise path identities at one x for one n.
ResidualReport path_identities(const DiagonalPath& path, int n, const Real& x, const std::optional<Real>& step) {
  ResidualReport rep;
  const auto cfg = path.at(x);
  rep.append(check_partials(cfg, n, step));
  rep.append(check_toda(path, n, x, step));
  rep.append(check_riccati(path, n, x, step));
  rep.append(check_pde_R(path, n, x, step));
  const auto s = sigma_sample(cfg, n, step);
  rep.append(check_sigma_routes(s));
  rep.append(check_sigma_pde(s));
  return rep;
}

void add_branch_flip(Artifact& a, const Real& margin, const RunConfig& rc) {
  Check c{"branch-flip", margin, margin, bound_for("branch-flip", rc), true};
  for (auto& old : a.checks)
    if (old.identity == c.identity) {
      old.max_abs = min(old.max_abs, margin);
      old.max_rel = min(old.max_rel, margin);
      return;
    }
  a.checks.push_back(std::move(c));
}

bool has_nonzero_jump(const JumpWeightConfig& cfg) {
  for (int k = 1; k <= cfg.m(); ++k)
    if (!cfg.omega_jump(k).is_zero()) return true;
  return false;
}

}  // namespace

Artifact cmd_moments(const RunConfig& rc) {
  const auto cfg = rc.weight();
  const auto table = moments(cfg, static_cast<unsigned>(rc.n_hi));
  Artifact a{"moments", {"j", "mu"}, {}, {}, {}, {}};
  for (int j = rc.n_lo; j <= rc.n_hi; ++j) a.rows.push_back({std::to_string(j), num(table.mu[static_cast<size_t>(j)])});
  return a;
}

Artifact cmd_ops(const RunConfig& rc) {
  const auto cfg = rc.weight();
  const auto sys = build_op_system(cfg, rc.n_hi + 1);
  Artifact a{"ops", {"n", "h", "alpha", "beta", "p"}, {}, {}, {}, {}};
  for (int n = rc.n_lo; n <= rc.n_hi; ++n) {
    const auto un = static_cast<size_t>(n);
    a.rows.push_back({std::to_string(n), num(sys.h[un]), num(sys.alpha[un]), num(sys.beta[un]), num(sys.p_sub[un])});
  }
  a.summary["pivot_accuracy"] = short_num(sys.pivot_accuracy);
  if (rc.n_hi >= 1) add_checks(a, check_heine(sys, rc.n_hi), rc);
  return a;
}

Artifact cmd_hankel(const RunConfig& rc) {
  const auto cfg = rc.weight();
  const auto sys = build_op_system(cfg, rc.n_hi + 1);
  const bool gauss = is_plain_gaussian(cfg);
  Artifact a{"hankel", {"n", "D", "D_direct", "ln_D"}, {}, {}, {}, {}};
  if (gauss) a.columns.push_back("D_closed_form");
  ResidualReport rep;
  for (int n = rc.n_lo; n <= rc.n_hi; ++n) {
    const Real d = sys.det(n);
    const Real direct = n == 0 ? Real(1L, cfg.precision()) : hankel_det_direct(n, cfg);
    a.rows.push_back({std::to_string(n), num(d), num(direct), num(sys.log_det(n))});
    rep.add("hankel-direct", n, 0, d, direct);
    if (gauss) {
      const Real closed = gaussian_partition_function(n, cfg.precision());
      a.rows.back().push_back(num(closed));
      rep.add("partition", n, 0, d, closed);
    }
  }
  if (rc.n_hi >= 1) rep.append(check_heine(sys, rc.n_hi));
  add_checks(a, rep, rc);
  return a;
}

Artifact cmd_ladder(const RunConfig& rc) {
  need_n_at_least(rc, 1, "ladder");
  const auto cfg = rc.weight();
  const auto sys = build_op_system(cfg, rc.n_hi + 1);
  const auto states = compute_ladder_states(sys, rc.n_hi + 1);
  const auto z = identity_sample_points(cfg);
  Artifact a{"ladder", {"n", "k", "R", "r"}, {}, {}, {}, {}};
  ResidualReport rep;
  for (int n = rc.n_lo; n <= rc.n_hi; ++n) {
    const auto& st = states[static_cast<size_t>(n)];
    for (int k = 1; k <= cfg.m(); ++k)
      a.rows.push_back({std::to_string(n), std::to_string(k), num(st.R[static_cast<size_t>(k - 1)]),
                        num(st.r[static_cast<size_t>(k - 1)])});
    rep.append(check_function_identities(sys, states, n, z));
    rep.append(check_coefficient_identities(sys, states, n));
  }
  add_checks(a, rep, rc);
  return a;
}

Artifact cmd_iterate(const RunConfig& rc) {
  const auto cfg = rc.weight();
  const auto it = iterate_difference(cfg, rc.n_hi);
  const auto sys = build_op_system(cfg, rc.n_hi);
  Artifact a{"iterate", {"n", "k", "role", "R_iter", "r_iter", "R_direct", "r_direct"}, {}, {}, {}, {}};
  ResidualReport rep;
  for (int n = rc.n_lo; n <= rc.n_hi; ++n) {
    const auto direct = compute_ladder(sys, n);
    const auto& st = it.states[static_cast<size_t>(n)];
    for (int k = 1; k <= cfg.m(); ++k) {
      const auto kk = static_cast<size_t>(k - 1);
      a.rows.push_back({std::to_string(n), std::to_string(k), channel_role(cfg, k, it.pivot), num(st.R[kk]),
                        num(st.r[kk]), num(direct.R[kk]), num(direct.r[kk])});
      rep.add("iterate", n, k, st.R[kk], direct.R[kk]);
      rep.add("iterate", n, k, st.r[kk], direct.r[kk]);
    }
  }
  for (int k : it.pinned) a.notes.push_back("channel " + std::to_string(k) + " has omega = 0 and is pinned at zero");
  add_checks(a, rep, rc);
  return a;
}

Artifact cmd_verify(const RunConfig& rc) {
  need_n_at_least(rc, 1, "verify");
  const auto cfg = rc.weight();
  const auto step = rc.step();
  Artifact a{"verify", {"identity", "n", "max_abs", "max_rel"}, {}, {}, {}, {}};
  ResidualReport all;

  const auto sys = build_op_system(cfg, rc.n_hi + 1);
  const auto states = compute_ladder_states(sys, rc.n_hi + 1);
  const auto z = identity_sample_points(cfg);
  if (is_plain_gaussian(cfg))
    for (int n = rc.n_lo; n <= rc.n_hi; ++n) all.add("partition", n, 0, sys.det(n), gaussian_partition_function(n, cfg.precision()));
  all.append(check_heine(sys, rc.n_hi));
  for (int n = rc.n_lo; n <= rc.n_hi; ++n) {
    all.append(check_function_identities(sys, states, n, z));
    all.append(check_coefficient_identities(sys, states, n));
  }
  try {
    const auto it = iterate_difference(cfg, rc.n_hi);
    for (int n = rc.n_lo; n <= rc.n_hi; ++n) {
      const auto& st = it.states[static_cast<size_t>(n)];
      for (int k = 1; k <= cfg.m(); ++k) {
        const auto kk = static_cast<size_t>(k - 1);
        all.add("iterate", n, k, st.R[kk], states[static_cast<size_t>(n)].R[kk]);
        all.add("iterate", n, k, st.r[kk], states[static_cast<size_t>(n)].r[kk]);
      }
    }
  } catch (const DegenerateIteration& e) {
    a.notes.push_back(std::string("difference iteration skipped: ") + e.what());
  }

  if (cfg.m() >= 1) {
    const auto path = DiagonalPath::through(cfg);
    const Real x = cfg.t()[0];
    // the representation runs from x = 0 (t_1 = 0) to the config itself
    const Real x1 = x.is_zero() ? Real::parse("0.5", cfg.precision()) : x;
    Real margin = Real::infinity(cfg.precision());
    for (int n = rc.n_lo; n <= rc.n_hi; ++n) {
      all.append(path_identities(path, n, x, step));
      if (has_nonzero_jump(cfg)) margin = min(margin, branch_flip_margin(sigma_sample(cfg, n, step)));
      const auto ir = integral_representation(path, n, x1, rc.real(rc.quadrature_tol, "quadrature_tol"), step);
      all.add("dint", n, 0, ir.value, ir.direct);
      if (cfg.omega()[0].is_zero()) {
        if (n == rc.n_lo) a.notes.push_back("coupled P_IV maps skipped: omega_0 = 0 is not normalizable");
      } else {
        try {
          all.append(check_piv_maps(cfg, n));
        } catch (const ZeroChannel& e) {
          a.notes.push_back(std::string("coupled P_IV maps skipped at n = ") + std::to_string(n) + ": " + e.what());
        }
      }
    }
    if (has_nonzero_jump(cfg)) add_branch_flip(a, margin, rc);
  }
  for (const auto& id : all.identities()) {
    for (int n = rc.n_lo; n <= rc.n_hi; ++n) {
      ResidualReport one;
      for (const auto& r : all.items())
        if (r.identity == id && r.n == n) one.add_scaled(r.identity, r.n, r.k, r.abs, r.scale);
      if (one.empty()) continue;
      a.rows.push_back({id, std::to_string(n), short_num(one.max_abs()), short_num(one.max_rel())});
    }
  }
  add_checks(a, all, rc);
  return a;
}

Artifact cmd_sigma_pde(const RunConfig& rc) {
  need_n_at_least(rc, 1, "sigma-pde");
  const auto path = rc.path();
  const Real x = rc.start();
  const auto cfg = path.at(x);
  const auto step = rc.step();
  Artifact a{"sigma-pde", {"n", "x", "sigma", "L_sigma", "beta"}, {}, {}, {}, {}};
  for (int k = 1; k <= cfg.m(); ++k) a.columns.push_back("Delta_" + std::to_string(k));
  ResidualReport rep;
  Real margin = Real::infinity(cfg.precision());
  for (int n = rc.n_lo; n <= rc.n_hi; ++n) {
    const auto s = sigma_sample(cfg, n, step);
    std::vector<std::string> row{std::to_string(n), num(x), num(s.sigma), num(s.L_sigma), num(s.beta)};
    for (const auto& d : s.delta) row.push_back(num(d));
    a.rows.push_back(std::move(row));
    rep.append(check_sigma_routes(s));
    rep.append(check_sigma_pde(s));
    if (has_nonzero_jump(cfg)) margin = min(margin, branch_flip_margin(s));
  }
  add_checks(a, rep, rc);
  if (has_nonzero_jump(cfg)) add_branch_flip(a, margin, rc);
  return a;
}

Artifact cmd_riccati(const RunConfig& rc) {
  need_n_at_least(rc, 1, "riccati");
  const auto path = rc.path();
  const Real x = rc.start();
  const auto cfg = path.at(x);
  const auto step = rc.step();
  const auto sys = build_op_system(cfg, rc.n_hi);
  Artifact a{"riccati", {"n", "k", "x", "R", "r"}, {}, {}, {}, {}};
  ResidualReport rep;
  for (int n = rc.n_lo; n <= rc.n_hi; ++n) {
    const auto st = compute_ladder(sys, n);
    for (int k = 1; k <= cfg.m(); ++k)
      a.rows.push_back({std::to_string(n), std::to_string(k), num(x), num(st.R[static_cast<size_t>(k - 1)]),
                        num(st.r[static_cast<size_t>(k - 1)])});
    rep.append(check_riccati(path, n, x, step));
    rep.append(check_pde_R(path, n, x, step));
  }
  add_checks(a, rep, rc);
  return a;
}

Artifact cmd_toda(const RunConfig& rc) {
  need_n_at_least(rc, 1, "toda");
  const auto path = rc.path();
  const Real x = rc.start();
  const auto sys = build_op_system(path.at(x), rc.n_hi);
  Artifact a{"toda", {"n", "x", "alpha", "beta", "ln_D"}, {}, {}, {}, {}};
  ResidualReport rep;
  for (int n = rc.n_lo; n <= rc.n_hi; ++n) {
    const auto un = static_cast<size_t>(n);
    a.rows.push_back({std::to_string(n), num(x), num(sys.alpha[un]), num(sys.beta[un]), num(sys.log_det(n))});
    rep.append(check_toda(path, n, x, rc.step()));
  }
  add_checks(a, rep, rc);
  return a;
}

Artifact cmd_cpiv(const RunConfig& rc, bool second_order) {
  if (rc.n_lo != rc.n_hi) throw ConfigError("n", "cpiv integrates one degree; pass a single n");
  need_n_at_least(rc, 1, "cpiv");
  const int n = rc.n_lo;
  const auto path = rc.path();
  const Real x0 = rc.start();
  const Real x1 = rc.x1 ? rc.real(*rc.x1, "x1") : x0 + Real::parse("0.5", rc.precision());
  const Real tol = rc.real(rc.ode_tol, "ode_tol");
  const auto init = map_to_piv(path.at(x0), n);
  const auto traj = integrate_cpiv(init, path, n, x1, tol);
  Artifact a{"cpiv", {"x"}, {}, {}, {}, {}};
  const int m = path.m();
  for (int k = 1; k <= m; ++k) a.columns.push_back("a_" + std::to_string(k));
  for (int k = 1; k <= m; ++k) a.columns.push_back("b_" + std::to_string(k));
  a.columns.push_back("H");
  for (const auto& s : traj.nodes()) {
    std::vector<std::string> row{num(s.x)};
    for (const auto& v : s.a) row.push_back(num(v));
    for (const auto& v : s.b) row.push_back(num(v));
    row.push_back(num(piv_hamiltonian(s, path.c(), n)));
    a.rows.push_back(std::move(row));
  }
  a.summary["steps"] = traj.nodes().size() - 1;
  a.summary["rejected_steps"] = traj.rejected_steps();
  a.summary["y_alias_x0"] = num(init.y_alias);
  ResidualReport rep = check_piv_maps(path.at(x0), n);
  rep.append(check_piv_maps(path.at(x1), n));
  rep.append(check_cpiv_trajectory(path, n, traj, second_order));
  add_checks(a, rep, rc);
  return a;
}

Artifact cmd_scan(const RunConfig& rc, unsigned threads) {
  need_n_at_least(rc, 1, "scan");
  const auto path = rc.path();
  const Real x0 = rc.start();
  const Real x1 = rc.x1 ? rc.real(*rc.x1, "x1") : x0 + 1L;
  const int pts = rc.points;
  const auto step = rc.step();
  std::vector<Real> xs;
  for (int i = 0; i < pts; ++i) xs.push_back(pts == 1 ? x0 : x0 + (x1 - x0) * i / static_cast<long>(pts - 1));

  const size_t jobs = xs.size() * static_cast<size_t>(rc.n_hi - rc.n_lo + 1);
  std::vector<ResidualReport> out(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t j = next++; j < jobs; j = next++) {
      const size_t i = j / static_cast<size_t>(rc.n_hi - rc.n_lo + 1);
      const int n = rc.n_lo + static_cast<int>(j % static_cast<size_t>(rc.n_hi - rc.n_lo + 1));
      try {
        out[j] = path_identities(path, n, xs[i], step);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads && t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  // first failure in grid order, so the report does not depend on scheduling
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  Artifact a{"scan", {"x", "n", "identity", "max_abs", "max_rel"}, {}, {}, {}, {}};
  ResidualReport all;
  for (size_t j = 0; j < jobs; ++j) {
    const size_t i = j / static_cast<size_t>(rc.n_hi - rc.n_lo + 1);
    const int n = rc.n_lo + static_cast<int>(j % static_cast<size_t>(rc.n_hi - rc.n_lo + 1));
    for (const auto& id : out[j].identities())
      a.rows.push_back({num(xs[i]), std::to_string(n), id, short_num(out[j].max_abs(id)), short_num(out[j].max_rel(id))});
    all.append(out[j]);
  }
  add_checks(a, all, rc);
  return a;
}

Artifact cmd_mc_compare(const RunConfig& rc, unsigned threads) {
  need_n_at_least(rc, 1, "mc-compare");
  const Region region = rc.region ? parse_region(*rc.region) : region_from_config(rc.weight());
  Artifact a{"mc-compare", {"n", "region", "p_mc", "std_err", "p_det", "z_score"}, {}, {}, {}, {}};
  auto results = nlohmann::ordered_json::array();
  Real worst(rc.precision());
  for (int n = rc.n_lo; n <= rc.n_hi; ++n) {
    const auto est = estimate_probability(n, region, rc.samples, rc.seed + static_cast<std::uint64_t>(n), threads);
    const Real p_det = determinant_probability(region, n, rc.precision());
    const auto cmp = compare_with_determinant(est, p_det);
    a.rows.push_back({std::to_string(n), format_region(region), num(est.p_hat), num(est.std_err), num(p_det),
                      num(cmp.z_score)});
    nlohmann::ordered_json r;
    r["n"] = n;
    r["p_mc"] = est.p_hat;
    r["std_err"] = est.std_err;
    r["p_det"] = num(p_det);
    r["z_score"] = cmp.z_score;
    results.push_back(std::move(r));
    worst = max(worst, Real(cmp.z_score, rc.precision()));
  }
  a.summary["region"] = format_region(region);
  a.summary["results"] = results;
  a.checks.push_back(Check{"mc-z", worst, worst, bound_for("mc-z", rc)});
  return a;
}

}  // namespace jumphankel::cli

#pragma once

#include <vector>

#include "jumphankel/painleve.hpp"

namespace jumphankel {

/// Coupled P_IV variables at x. y_alias is 4 pi e^{-x^2} / h_{n-1} for the
/// weight normalised to omega_0 = 1 (the imaginary unit factored out).
struct PIVState {
  Real x;
  std::vector<Real> a;
  std::vector<Real> b;
  Real y_alias;
};

/// a_k = r^2 / (R (sum r + n)), b_k = R (sum r + n) / r from the ladder data of
/// config at degree n >= 1, with x = t_1. Channels with omega_k = 0 are pinned
/// at a_k = b_k = 0. Throws NotNormalizable if omega_0 = 0 and ZeroChannel if
/// r_{n,k} vanishes on a channel with omega_k != 0.
PIVState map_to_piv(const JumpWeightConfig& config, int n);

/// R_{n,k} = a_k b_k^2 / (sum a b + n), r_{n,k} = a_k b_k.
LadderState ladder_from_piv(const PIVState& s, int n);
/// The inverse direction of ladder_from_piv (no weight checks).
PIVState piv_from_ladder(const Real& x, const LadderState& state);

/// H = 2 sum a_k b_k (x + c_k) - 2 (sum a b + n) sum a - sum a_k b_k^2.
Real piv_hamiltonian(const PIVState& s, const std::vector<Real>& c, int n);

struct PIVRates {
  std::vector<Real> da;
  std::vector<Real> db;
};

/// Right-hand side of the coupled system
///   a_k' = -2 a_k (sum a + b_k - x - c_k)
///   b_k' = b_k^2 + 2 b_k (sum a - x - c_k) + 2 (sum a b + n).
/// Pinned channels have zero rates.
PIVRates piv_rhs(const PIVState& s, const std::vector<Real>& c, int n,
                 const std::vector<bool>& pinned);

/// piv-roundtrip-Rr, piv-roundtrip-ab, piv-akR (a_k = R_{n-1,k}/2), piv-btab
/// (beta_n = (sum a b + n)/2) and piv-sigma (H = sigma_n) at config.
ResidualReport check_piv_maps(const JumpWeightConfig& config, int n);

/// Accepted steps of an integration with cubic Hermite dense output.
class PIVTrajectory {
 public:
  PIVTrajectory(std::vector<PIVState> nodes, std::vector<PIVRates> rates, long rejected)
      : nodes_(std::move(nodes)), rates_(std::move(rates)), rejected_(rejected) {}

  const std::vector<PIVState>& nodes() const { return nodes_; }
  const std::vector<PIVRates>& rates() const { return rates_; }
  long rejected_steps() const { return rejected_; }
  const PIVState& back() const { return nodes_.back(); }
  /// Dense output at any x between the first and last node.
  PIVState at(const Real& x) const;

 private:
  std::vector<PIVState> nodes_;
  std::vector<PIVRates> rates_;
  long rejected_ = 0;
};

/// Dormand-Prince 5(4) from init to x1 along path, local error per step
/// <= tol * max(1, |y|) componentwise. StepUnderflow (with the last x) if the
/// step falls below 2^{-bits/4}, the usual sign of a movable pole.
PIVTrajectory integrate_cpiv(const PIVState& init, const DiagonalPath& path, int n, const Real& x1,
                             const Real& tol);

/// Along a trajectory:
///   cpiv-traj      relative deviation from map_to_piv computed directly at each node
///   cpiv-hamilton  FD of H in b_k against a_k', in a_k against -b_k'
///   cpiv-a2        second-order equation for a_k, a'' by FD over short re-integrations
///                  (skipped unless second_order; it costs four integrations per node)
ResidualReport check_cpiv_trajectory(const DiagonalPath& path, int n, const PIVTrajectory& traj,
                                     bool second_order = true);

}  // namespace jumphankel

#pragma once

#include <span>
#include <vector>

#include "jumphankel/opsys.hpp"
#include "jumphankel/residual.hpp"

namespace jumphankel {

/// R_{n,k} = omega_k e^{-t_k^2} P_n(t_k)^2 / h_n,
/// r_{n,k} = omega_k e^{-t_k^2} P_n(t_k) P_{n-1}(t_k) / h_{n-1}  (r_{0,k} = 0).
/// Channels with omega_k = 0 are exactly zero.
LadderState compute_ladder(const OPSystem& sys, int n);

/// States for degrees 0..n_hi (index == degree).
std::vector<LadderState> compute_ladder_states(const OPSystem& sys, int n_hi);

/// Coefficient-level consequences of (S1) and (S2') at degree n >= 1:
/// s1-1 / alR, s1-2, s2'-1 / btr, s2'-2, s2'-3, and both expressions p-1, p-2
/// for p(n, t). Needs states[0..n+1]. Residuals are absolute; each carries the
/// largest term as its scale.
ResidualReport check_coefficient_identities(const OPSystem& sys,
                                            std::span<const LadderState> states, int n);

struct DifferenceIteration {
  std::vector<LadderState> states;  // degrees 0..n_max
  std::vector<int> pinned;          // 1-based channels with omega_k = 0, held at zero
  int pivot = 0;                    // 1-based channel used as the ratio pivot, 0 if none
};

/// Marches the difference system forward from R_{0,k} = omega_k e^{-t_k^2}/mu_0,
/// r_{0,k} = 0:
///   r_{n+1,k} = -r_{n,k} + (t_k - sum_j R_{n,j}/2) R_{n,k}
///   R_{n+1,p} = 2 r_{n+1,p}^2 / ((sum_j r_{n+1,j} + n + 1) R_{n,p})
///   R_{n+1,k} = r_{n+1,k}^2 R_{n,p} / (r_{n+1,p}^2 R_{n,k}) * R_{n+1,p}
/// where p is the first channel with omega_p != 0. Throws DegenerateIteration
/// if a denominator drops below 2^{-bits/2} in magnitude.
DifferenceIteration iterate_difference(const JumpWeightConfig& config, int n_max);

}  // namespace jumphankel

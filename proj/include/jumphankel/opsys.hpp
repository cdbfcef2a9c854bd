#pragma once

#include <span>
#include <vector>

#include "jumphankel/real.hpp"
#include "jumphankel/residual.hpp"
#include "jumphankel/weight.hpp"

namespace jumphankel {

/// Monic orthogonal polynomials P_0..P_{n_max} of a jump weight together with
/// their norms and three-term recurrence data
///   z P_n = P_{n+1} + alpha_n P_n + beta_n P_{n-1}.
struct OPSystem {
  JumpWeightConfig config;
  int n_max = 0;
  std::vector<Real> h;      // h_0..h_{n_max}, squared norms
  std::vector<Real> alpha;  // alpha_0..alpha_{n_max}
  std::vector<Real> beta;   // beta_0 := 0, beta_1..beta_{n_max}
  std::vector<Real> p_sub;  // p(0) := 0, p(1)..p(n_max): coefficient of z^{n-1} in P_n
  /// coeffs[n][j] is the z^j coefficient of P_n; coeffs[n][n] == 1.
  std::vector<std::vector<Real>> coeffs;
  /// Estimated relative accuracy of the worst LDL^T pivot.
  Real pivot_accuracy;

  Precision precision() const { return config.precision(); }
  /// ln D_n = sum_{k<n} ln h_k, for 0 <= n <= n_max + 1.
  Real log_det(int n) const;
  Real det(int n) const { return exp(log_det(n)); }
};

/// Factors the (n_max+1)^2 moment Hankel matrix as L D L^T. The pivots are
/// h_n and the rows of L^{-1} are the monic polynomials; alpha_n comes from
/// <z P_n, P_n>/h_n and the stored coefficients are then regenerated by the
/// recurrence. Throws IllConditioned when a pivot keeps fewer than half of the
/// working bits.
OPSystem build_op_system(const JumpWeightConfig& config, int n_max);

/// D_n = prod_{k<n} h_k.
Real hankel_det(int n, const JumpWeightConfig& config);
/// Determinant of the n x n moment matrix by partial-pivoting elimination,
/// independent of the LDL^T route.
Real hankel_det_direct(int n, const JumpWeightConfig& config);

/// pi^{n/2} 2^{-n(n-1)/2} prod_{j=2}^n j! / n!, the pure-Gaussian D_n.
Real gaussian_partition_function(int n, Precision p = Precision());

/// heine: beta_n = h_n / h_{n-1} against D_{n+1} D_{n-1} / D_n^2 with the
/// determinants from hankel_det_direct, 1 <= n <= n_hi < sys.n_max.
ResidualReport check_heine(const OPSystem& sys, int n_hi);

struct PolyValue {
  Real value;
  Real derivative;
};

/// P_n(z) and P_n'(z) by the recurrence.
PolyValue eval_P(const OPSystem& sys, int n, const Real& z);
/// P_n(z) by Horner's rule on the stored coefficients.
Real eval_P_horner(const OPSystem& sys, int n, const Real& z);

/// sum_{k<n} P_k(x) P_k(y) / h_k.
Real cd_kernel(const OPSystem& sys, int n, const Real& x, const Real& y);
/// [P_n(x) P_{n-1}(y) - P_{n-1}(x) P_n(y)] / [h_{n-1} (x - y)], x != y.
Real cd_kernel_closed(const OPSystem& sys, int n, const Real& x, const Real& y);

/// Residues R_{n,k}, r_{n,k} of A_n, B_n at the jumps, k = 1..m (stored 0-based).
struct LadderState {
  int n = 0;
  std::vector<Real> R;
  std::vector<Real> r;
};

struct LadderAB {
  Real A;
  Real B;
};

/// A_n(z) = 2 + sum_k R_{n,k}/(z - t_k), B_n(z) = sum_k r_{n,k}/(z - t_k).
/// Throws PoleAtJump if z coincides with a jump.
LadderAB ladder_AB(const JumpWeightConfig& config, const LadderState& state, const Real& z);

/// Deterministic evaluation points for function-level identities:
/// t_1 - 0.7, midpoints of consecutive jumps, t_m + 0.9, 2.3, -1.6, minus any
/// point that coincides with a jump or repeats. Fixed fillers (0.45, -0.35,
/// 1.15, -2.55, 3.05) top the set up to at least five points.
std::vector<Real> identity_sample_points(const JumpWeightConfig& config);

/// Lowering and raising operators and the compatibility conditions (S1),
/// (S2), (S2') at degree n, evaluated at each sample point. Needs
/// states[0..n+1] (index == degree) and sys.n_max >= n + 1.
ResidualReport check_function_identities(const OPSystem& sys,
                                         std::span<const LadderState> states, int n,
                                         std::span<const Real> z_samples);

}  // namespace jumphankel

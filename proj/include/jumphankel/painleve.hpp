#pragma once

#include <optional>
#include <vector>

#include "jumphankel/ladder.hpp"
#include "jumphankel/opsys.hpp"
#include "jumphankel/residual.hpp"

namespace jumphankel {

/// Jumps moving together: t_k = x + c_k with c_1 = 0 < c_2 < ... < c_m fixed.
/// Along the path the operator sum_k d/dt_k is d/dx.
class DiagonalPath {
 public:
  /// Throws ConfigError("c") unless c_1 == 0 and c is strictly increasing, and
  /// the weight checks of JumpWeightConfig on omega.
  static DiagonalPath make(std::vector<Real> c, std::vector<Real> omega, Precision p = Precision());
  /// The path through a config: x = t_1, c_k = t_k - t_1. Needs m >= 1.
  static DiagonalPath through(const JumpWeightConfig& config);

  int m() const { return static_cast<int>(c_.size()); }
  Precision precision() const { return prec_; }
  const std::vector<Real>& c() const { return c_; }
  const std::vector<Real>& omega() const { return omega_; }
  JumpWeightConfig at(const Real& x) const;

 private:
  DiagonalPath(std::vector<Real> c, std::vector<Real> omega, Precision p)
      : prec_(p), c_(std::move(c)), omega_(std::move(omega)) {}
  Precision prec_;
  std::vector<Real> c_;
  std::vector<Real> omega_;
};

/// ln D_n (0 for n = 0).
Real log_hankel(const JumpWeightConfig& config, int n);
/// sigma_n = 2 p(n, t).
Real sigma_value(const JumpWeightConfig& config, int n);

/// Fourth-order central difference of ln D_n in t_k (k 1-based). The stencil
/// reaches t_k +- 2 step; StepCollision if that crosses a neighbouring jump.
Real partial_lnD(const JumpWeightConfig& config, int n, int k,
                 const std::optional<Real>& step = std::nullopt);
/// Same for p(n, t).
Real partial_p(const JumpWeightConfig& config, int n, int k,
               const std::optional<Real>& step = std::nullopt);

/// d/dt_k ln D_n = -sum_{j<n} R_{j,k} ("dlnD") and d/dt_k p(n) = r_{n,k} ("dp").
ResidualReport check_partials(const JumpWeightConfig& config, int n,
                              const std::optional<Real>& step = std::nullopt);

/// Along the path at x, n >= 1:
///   toda-beta      d/dx ln beta_n = 2(alpha_{n-1} - alpha_n)
///   toda-alpha     d/dx alpha_n = 2(beta_n - beta_{n+1}) + 1
///   toda-2         d^2/dx^2 ln beta_n = 4(beta_{n-1} - 2 beta_n + beta_{n+1})
///   toda-molecule  d^2/dx^2 ln Dhat_n = 4 Dhat_{n+1} Dhat_{n-1} / Dhat_n^2,
/// with Dhat_n = e^{n x^2} D_n and the right side taken from determinants.
ResidualReport check_toda(const DiagonalPath& path, int n, const Real& x,
                          const std::optional<Real>& step = std::nullopt);

/// ric-R: dR/dx = (sum_j R_j - 2 t_k) R_k + 4 r_k
/// ric-r: dr/dx = 2 r_k^2 / R_k - (sum_j r_j + n) R_k
/// Zero-omega channels are recorded as exact zeros. ZeroChannel if R_{n,k}
/// vanishes (below 2^{-bits/2}) on a channel with omega_k != 0.
ResidualReport check_riccati(const DiagonalPath& path, int n, const Real& x,
                             const std::optional<Real>& step = std::nullopt);

/// pde-R: R'' - R'^2/(2R) = R [3/2 (sum R)^2 - 2 sum_j (t_k + t_j) R_j + 2(t_k^2 - 2n - 1)].
ResidualReport check_pde_R(const DiagonalPath& path, int n, const Real& x,
                           const std::optional<Real>& step = std::nullopt);

struct SigmaSample {
  int n = 0;
  std::vector<Real> t;
  Real sigma;       // 2 p(n, t)
  Real sigma_fd;    // sum_k FD d/dt_k ln D_n
  Real sigma_rR;    // from R_{n,k}, r_{n,k}
  std::vector<Real> grad;               // FD d sigma / dt_k
  std::vector<std::vector<Real>> hess;  // FD d^2 sigma / dt_k dt_j
  std::vector<Real> delta;              // Delta_k
  Real L_sigma;                         // sum_k grad_k
  Real beta;                            // beta_n
  LadderState state;                    // direct R_{n,k}, r_{n,k}
  std::vector<Real> R_rec;              // reconstruction with branch sgn(omega_k)
  std::vector<Real> R_flipped;          // same with the branch flipped
  std::vector<int> sgn;                 // sgn(omega_k)
};

/// sigma_n at config by three routes plus its FD gradient and Hessian, Delta_k
/// and the R reconstruction. Channels with omega_k = 0 have R pinned to 0 in
/// both reconstructions. n >= 1.
SigmaSample sigma_sample(const JumpWeightConfig& config, int n,
                         const std::optional<Real>& step = std::nullopt);

/// sigma-fd, sigma-rR (routes vs 2p), r-sig, bt-Dsig, R-sig, delta-nonneg
/// (records max(0, -Delta_k)) from a sample.
ResidualReport check_sigma_routes(const SigmaSample& s);

/// sigma-pde: sum_k sgn(omega_k) sqrt(Delta_k) = 2(sum_k t_k sigma_k - sigma),
/// plus sigma-m1 / sigma-m2, the squared forms for m = 1 and m = 2.
ResidualReport check_sigma_pde(const SigmaSample& s);

/// Smallest relative change of R-sig on a nonzero channel when its branch is
/// flipped; the negative control expects this to be large.
Real branch_flip_margin(const SigmaSample& s);

struct IntegralRepresentation {
  Real value;   // from the integral of 4 sigma written in R, R'
  Real direct;  // e^{n x1^2} D_n(x1) / D_n(0)
  Real quadrature_error;
};

/// Dhat_n(x1)/Dhat_n(0) along the path by quadrature of the R, R' integrand
/// (R' by FD of direct ladder data), against the direct determinant ratio.
IntegralRepresentation integral_representation(const DiagonalPath& path, int n, const Real& x1,
                                               const Real& tol,
                                               const std::optional<Real>& step = std::nullopt);

}  // namespace jumphankel

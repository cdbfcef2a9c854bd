#pragma once

#include <string>
#include <vector>

#include "jumphankel/real.hpp"

namespace jumphankel {

/// Gaussian weight with m jumps:
///   w(x) = e^{-x^2} (omega_0 + sum_k omega_k theta(x - t_k)),  theta(0) := 0.
/// Invariants (checked on construction): t strictly increasing, omega has m+1
/// entries, every partial sum omega_0 + ... + omega_l is >= 0 and at least one
/// is > 0. m = 0 is the plain Gaussian.
class JumpWeightConfig {
 public:
  /// Validating factory; throws ConfigError naming the offending field.
  static JumpWeightConfig make(std::vector<Real> t, std::vector<Real> omega,
                               Precision p = Precision());
  static JumpWeightConfig make(const std::vector<double>& t, const std::vector<double>& omega,
                               Precision p = Precision());
  static JumpWeightConfig pure_gaussian(Precision p = Precision());

  int m() const { return static_cast<int>(t_.size()); }
  Precision precision() const { return prec_; }
  /// Jump locations t_1..t_m, stored 0-based.
  const std::vector<Real>& t() const { return t_; }
  /// omega_0..omega_m.
  const std::vector<Real>& omega() const { return omega_; }
  /// omega of jump k (1-based, as in the weight formula).
  const Real& omega_jump(int k) const { return omega_[static_cast<size_t>(k)]; }
  int sign_of_jump(int k) const { return omega_jump(k).sign(); }

  /// All jumps translated by s (the diagonal direction sum_k d/dt_k).
  JumpWeightConfig shifted(const Real& s) const;
  /// Jump k (1-based) moved to tk. Throws StepCollision if ordering breaks.
  JumpWeightConfig with_jump(int k, const Real& tk) const;
  /// Every omega multiplied by c > 0.
  JumpWeightConfig scaled(const Real& c) const;

  /// Human-readable summary used in diagnostics.
  std::string describe() const;

 private:
  JumpWeightConfig(std::vector<Real> t, std::vector<Real> omega, Precision p)
      : prec_(p), t_(std::move(t)), omega_(std::move(omega)) {}
  static void validate(const std::vector<Real>& t, const std::vector<Real>& omega);

  Precision prec_;
  std::vector<Real> t_;
  std::vector<Real> omega_;
};

Real weight_eval(const Real& x, const JumpWeightConfig& config);

/// mu_0 .. mu_J of the weight. Immutable once built.
struct MomentTable {
  JumpWeightConfig config;
  std::vector<Real> mu;

  unsigned max_order() const { return static_cast<unsigned>(mu.size() - 1); }
};

/// Closed-form moments: mu_j = omega_0 F_j + sum_k omega_k G_j(t_k).
MomentTable moments(const JumpWeightConfig& config, unsigned max_order);

/// Quadrature oracle for a single moment, split at the jumps.
/// Throws NonConvergence if the quadrature cannot reach tol.
Real moment_by_quadrature(const JumpWeightConfig& config, unsigned j, const Real& tol);

}  // namespace jumphankel

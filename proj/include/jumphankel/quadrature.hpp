#pragma once

#include <functional>

#include "jumphankel/real.hpp"

namespace jumphankel {

using Integrand = std::function<Real(const Real&)>;

struct QuadratureResult {
  Real value;
  Real error_estimate;  // |I_L - I_{L-1}| at the accepted level
  int levels = 0;
  long evaluations = 0;
};

/// Double-exponential quadrature over [a, b]. Either endpoint may be infinite:
/// finite intervals use the tanh-sinh map, half-lines exp-sinh and the real
/// line sinh-sinh. The step is halved until two successive levels agree to tol.
/// Endpoint singularities of integrable type are fine; interior jumps are not,
/// so split the interval there. Throws NonConvergence when max_level is hit.
QuadratureResult tanh_sinh_integrate(const Integrand& f, const Real& a, const Real& b,
                                     const Real& tol, int max_level = 12);

}  // namespace jumphankel

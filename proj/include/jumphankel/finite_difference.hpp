#pragma once

#include <algorithm>
#include <array>
#include <utility>

#include "jumphankel/real.hpp"

namespace jumphankel {

/// Default central-difference step: 2^{-bits/6} scaled by max(1, |x|), rounded
/// to a power of two so that x +- h is exact. Balances the h^4 truncation of
/// the stencils below against rounding noise in values that are themselves
/// accurate to well under full precision.
inline Real default_fd_step(const Real& x, Precision p) {
  long e = -static_cast<long>(p.bits() / 6);
  if (abs(x) > 1L) e += x.exponent();
  return Real::pow2(e, p);
}

/// Five-point stencils on values f(x - 2h), f(x - h), f(x), f(x + h), f(x + 2h),
/// for callers that evaluate several quantities per point.
using Stencil5 = std::array<Real, 5>;

inline Real fd_first_from(const Stencil5& f, const Real& h) {
  return (8L * (f[3] - f[1]) - (f[4] - f[0])) / (12L * h);
}

inline Real fd_second_from(const Stencil5& f, const Real& h) {
  return (16L * (f[3] + f[1]) - (f[4] + f[0]) - 30L * f[2]) / (12L * square(h));
}

/// f'(x), fourth-order central stencil.
template <class F>
Real fd_first(F&& f, const Real& x, const Real& h) {
  Real fp1 = f(x + h), fm1 = f(x - h);
  Real fp2 = f(x + 2L * h), fm2 = f(x - 2L * h);
  return (8L * (fp1 - fm1) - (fp2 - fm2)) / (12L * h);
}

/// f''(x), fourth-order central stencil. f0 = f(x) may be supplied to save a call.
template <class F>
Real fd_second(F&& f, const Real& x, const Real& h, const Real& f0) {
  Real fp1 = f(x + h), fm1 = f(x - h);
  Real fp2 = f(x + 2L * h), fm2 = f(x - 2L * h);
  return (16L * (fp1 + fm1) - (fp2 + fm2) - 30L * f0) / (12L * square(h));
}

template <class F>
Real fd_second(F&& f, const Real& x, const Real& h) {
  Real f0 = f(x);
  return fd_second(std::forward<F>(f), x, h, f0);
}

/// d^2 f / dx dy from the four-point stencil at steps (h, k) and (2h, 2k),
/// Richardson-combined to fourth order.
template <class F2>
Real fd_mixed(F2&& f, const Real& x, const Real& y, const Real& h, const Real& k) {
  auto four_point = [&](const Real& hh, const Real& kk) {
    return (f(x + hh, y + kk) - f(x + hh, y - kk) - f(x - hh, y + kk) + f(x - hh, y - kk)) /
           (4L * hh * kk);
  };
  Real d1 = four_point(h, k);
  Real d2 = four_point(2L * h, 2L * k);
  return (4L * d1 - d2) / 3L;
}

}  // namespace jumphankel

#include "jumphankel/quadrature.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "jumphankel/errors.hpp"

namespace jumphankel {

namespace {

enum class MapKind { Finite, UpperHalf, LowerHalf, WholeLine };

struct Node {
  Real x;
  Real w;
  bool skip = false;  // abscissa rounded onto a finite endpoint
};

class DeMap {
 public:
  DeMap(const Real& a, const Real& b, Precision p)
      : a_(a.rounded_to(p)), b_(b.rounded_to(p)), half_pi_(Real::pi(p) / 2L) {
    if (a.is_inf() && b.is_inf())
      kind_ = MapKind::WholeLine;
    else if (b.is_inf())
      kind_ = MapKind::UpperHalf;
    else if (a.is_inf())
      kind_ = MapKind::LowerHalf;
    else
      kind_ = MapKind::Finite;
    if (kind_ == MapKind::Finite) half_ = (b_ - a_) / 2L;
  }

  Node at(const Real& u) const {
    const Real s = half_pi_ * sinh(u);
    const Real ds = half_pi_ * cosh(u);
    switch (kind_) {
      case MapKind::Finite: {
        // Distance to the nearer endpoint: half * 2 / (e^{2|s|} + 1).
        const Real e = exp(2L * abs(s));
        const Real gap = half_ * 2L / (e + 1L);
        Node n{u.sign() >= 0 ? b_ - gap : a_ + gap, Real(), false};
        // sech^2(s) = 4 e^{2|s|} / (e^{2|s|} + 1)^2
        n.w = half_ * ds * 4L * e / square(e + 1L);
        n.skip = (n.x == a_) || (n.x == b_);
        return n;
      }
      case MapKind::UpperHalf: {
        const Real e = exp(s);
        Node n{a_ + e, ds * e, false};
        n.skip = (n.x == a_);
        return n;
      }
      case MapKind::LowerHalf: {
        const Real e = exp(s);
        Node n{b_ - e, ds * e, false};
        n.skip = (n.x == b_);
        return n;
      }
      case MapKind::WholeLine:
      default:
        return Node{sinh(s), ds * cosh(s), false};
    }
  }

 private:
  MapKind kind_;
  Real a_, b_, half_, half_pi_;
};

}  // namespace

QuadratureResult tanh_sinh_integrate(const Integrand& f, const Real& a, const Real& b,
                                     const Real& tol, int max_level) {
  const Precision p(static_cast<long>(
      std::max({a.precision().bits(), b.precision().bits(), tol.precision().bits()})));
  if (!(a < b)) {
    if (a == b) return {Real(p), Real(p), 0, 0};
    QuadratureResult r = tanh_sinh_integrate(f, b, a, tol, max_level);
    r.value = -r.value;
    return r;
  }
  const DeMap map(a, b, p);
  QuadratureResult res{Real(p), Real(p), 0, 0};

  auto term = [&](const Real& u) -> Real {
    Node n = map.at(u);
    if (n.skip || !n.w.is_finite() || n.w.is_zero()) return Real(p);
    ++res.evaluations;
    Real v = n.w * f(n.x);
    return v.is_finite() ? v : Real(p);
  };

  // Find how far out the summand stays significant, scanning in steps of 1/4.
  const Real negligible = Real::pow2(-static_cast<long>(p.bits()) - 16, p);
  const Real quarter(0.25, p);
  const Real u_limit(8.0, p);
  Real coarse_sum = term(Real(p));
  auto find_cap = [&](int dir) {
    Real u(p);
    int quiet = 0;
    while (u < u_limit) {
      u = u + quarter;
      Real t = term(dir > 0 ? u : -u);
      coarse_sum = coarse_sum + t;
      if (abs(t) <= negligible * max(abs(coarse_sum), Real(1L, p))) {
        if (++quiet >= 3) break;
      } else {
        quiet = 0;
      }
    }
    return u;
  };
  const Real cap_hi = find_cap(+1);
  const Real cap_lo = find_cap(-1);

  // Level 0: step 1/2 on [-cap_lo, cap_hi].
  Real h(0.5, p);
  Real sum = term(Real(p));
  for (long k = 1;; ++k) {
    Real u = h * k;
    bool any = false;
    if (u <= cap_hi) { sum = sum + term(u); any = true; }
    if (u <= cap_lo) { sum = sum + term(-u); any = true; }
    if (!any) break;
  }
  Real prev = h * sum;
  for (int level = 1; level <= max_level; ++level) {
    h = h / 2L;
    for (long k = 1;; k += 2) {
      Real u = h * k;
      bool any = false;
      if (u <= cap_hi) { sum = sum + term(u); any = true; }
      if (u <= cap_lo) { sum = sum + term(-u); any = true; }
      if (!any) break;
    }
    Real cur = h * sum;
    Real err = abs(cur - prev);
    res.levels = level;
    if (level >= 3 && err <= tol) {
      res.value = cur;
      res.error_estimate = err;
      return res;
    }
    prev = cur;
  }
  throw NonConvergence("tanh-sinh quadrature hit the level cap (" + std::to_string(max_level) +
                       ") before reaching tolerance " + tol.to_string(6));
}

}  // namespace jumphankel

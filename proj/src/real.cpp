#include "jumphankel/real.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <stdexcept>
#include <string>

namespace jumphankel {

Precision::Precision(long bits) {
  if (bits < static_cast<long>(kMinBits) || bits > (1L << 20))
    throw std::invalid_argument("precision_bits must be in [64, 1048576], got " +
                                std::to_string(bits));
  bits_ = static_cast<unsigned>(bits);
}

int Precision::round_trip_digits() const {
  // ceil(bits * log10(2)) + 1 digits always round-trip.
  return static_cast<int>(std::ceil(bits_ * 0.30102999566398120)) + 1;
}

namespace {

mpfr_prec_t wider(const Real& a, const Real& b) {
  return std::max(mpfr_get_prec(a.get()), mpfr_get_prec(b.get()));
}

Precision prec_of(mpfr_prec_t p) { return Precision(static_cast<long>(p)); }

}  // namespace

Real::Real(Precision p) {
  mpfr_init2(v_, static_cast<mpfr_prec_t>(p.bits()));
  mpfr_set_zero(v_, 1);
}

Real::Real(double v, Precision p) : Real(p) { mpfr_set_d(v_, v, MPFR_RNDN); }

Real Real::parse(std::string_view text, Precision p) {
  std::string s(text);
  // Trim surrounding whitespace.
  auto first = s.find_first_not_of(" \t\r\n");
  auto last = s.find_last_not_of(" \t\r\n");
  if (first == std::string::npos) throw std::invalid_argument("empty number");
  s = s.substr(first, last - first + 1);
  Real r(p);
  char* end = nullptr;
  if (mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN), end == s.c_str() || *end != '\0')
    throw std::invalid_argument("not a number: '" + s + "'");
  if (mpfr_nan_p(r.v_)) throw std::invalid_argument("NaN is not accepted: '" + s + "'");
  return r;
}

Real Real::pi(Precision p) {
  Real r(p);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::infinity(Precision p, int sign) {
  Real r(p);
  mpfr_set_inf(r.v_, sign < 0 ? -1 : 1);
  return r;
}

Real Real::pow2(long e, Precision p) {
  Real r(p);
  mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
  return r;
}

Real::Real(const Real& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
  v_[0] = o.v_[0];
  o.v_[0]._mpfr_d = nullptr;
}

Real& Real::operator=(const Real& o) {
  if (this == &o) return *this;
  if (v_[0]._mpfr_d == nullptr)
    mpfr_init2(v_, mpfr_get_prec(o.v_));
  else
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  if (this == &o) return *this;
  if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
  v_[0] = o.v_[0];
  o.v_[0]._mpfr_d = nullptr;
  return *this;
}

Real::~Real() {
  if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
}

Real Real::rounded_to(Precision p) const {
  Real r(p);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (digits <= 0) digits = precision().round_trip_digits();
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

long Real::exponent() const {
  if (mpfr_zero_p(v_) || !mpfr_number_p(v_)) return LONG_MIN;
  return mpfr_get_exp(v_);
}

Real Real::operator-() const {
  Real r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

Real& Real::operator+=(const Real& o) { return *this = *this + o; }
Real& Real::operator-=(const Real& o) { return *this = *this - o; }
Real& Real::operator*=(const Real& o) { return *this = *this * o; }
Real& Real::operator/=(const Real& o) { return *this = *this / o; }

#define JH_BINARY_RR(op, fn)                          \
  Real operator op(const Real& a, const Real& b) {    \
    Real r(prec_of(wider(a, b)));                     \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                  \
    return r;                                         \
  }

JH_BINARY_RR(+, mpfr_add)
JH_BINARY_RR(-, mpfr_sub)
JH_BINARY_RR(*, mpfr_mul)
JH_BINARY_RR(/, mpfr_div)
#undef JH_BINARY_RR

#define JH_BINARY_RS(op, T, fn, rfn)                  \
  Real operator op(const Real& a, T b) {              \
    Real r(a.precision());                            \
    fn(r.v_, a.v_, b, MPFR_RNDN);                     \
    return r;                                         \
  }                                                   \
  Real operator op(T a, const Real& b) {              \
    Real r(b.precision());                            \
    rfn(r.v_, a, b.v_, MPFR_RNDN);                    \
    return r;                                         \
  }

namespace {
// Argument-order adapters for the commutative cases.
int add_d_rev(mpfr_ptr r, double a, mpfr_srcptr b, mpfr_rnd_t m) { return mpfr_add_d(r, b, a, m); }
int mul_d_rev(mpfr_ptr r, double a, mpfr_srcptr b, mpfr_rnd_t m) { return mpfr_mul_d(r, b, a, m); }
int add_si_rev(mpfr_ptr r, long a, mpfr_srcptr b, mpfr_rnd_t m) { return mpfr_add_si(r, b, a, m); }
int mul_si_rev(mpfr_ptr r, long a, mpfr_srcptr b, mpfr_rnd_t m) { return mpfr_mul_si(r, b, a, m); }
}  // namespace

JH_BINARY_RS(+, double, mpfr_add_d, add_d_rev)
JH_BINARY_RS(-, double, mpfr_sub_d, mpfr_d_sub)
JH_BINARY_RS(*, double, mpfr_mul_d, mul_d_rev)
JH_BINARY_RS(/, double, mpfr_div_d, mpfr_d_div)
JH_BINARY_RS(+, long, mpfr_add_si, add_si_rev)
JH_BINARY_RS(-, long, mpfr_sub_si, mpfr_si_sub)
JH_BINARY_RS(*, long, mpfr_mul_si, mul_si_rev)
JH_BINARY_RS(/, long, mpfr_div_si, mpfr_si_div)
#undef JH_BINARY_RS

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Real& a, double b) {
  if (mpfr_nan_p(a.v_) || std::isnan(b)) return std::partial_ordering::unordered;
  int c = mpfr_cmp_d(a.v_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

#define JH_UNARY(name, fn)              \
  Real name(const Real& x) {            \
    Real r(x.precision());              \
    fn(r.get(), x.get(), MPFR_RNDN);    \
    return r;                           \
  }

JH_UNARY(abs, mpfr_abs)
JH_UNARY(sqrt, mpfr_sqrt)
JH_UNARY(exp, mpfr_exp)
JH_UNARY(log, mpfr_log)
JH_UNARY(sinh, mpfr_sinh)
JH_UNARY(cosh, mpfr_cosh)
JH_UNARY(tanh, mpfr_tanh)
JH_UNARY(square, mpfr_sqr)
JH_UNARY(erfc, mpfr_erfc)
#undef JH_UNARY

Real pow(const Real& x, long e) {
  Real r(x.precision());
  mpfr_pow_si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r(x.precision());
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real gauss_full_moment(unsigned j, Precision p) {
  if (j % 2 == 1) return Real(p);
  // F_0 = sqrt(pi), F_{2i} = (2i - 1)/2 * F_{2i-2}
  Real f = sqrt(Real::pi(p));
  for (unsigned i = 2; i <= j; i += 2) f = f * static_cast<long>(i - 1) / 2L;
  return f;
}

std::vector<Real> gauss_tail_moments(unsigned max_order, const Real& t) {
  const Precision p = t.precision();
  std::vector<Real> g;
  g.reserve(max_order + 1);
  const Real half_e = exp(-square(t)) / 2L;
  g.push_back(sqrt(Real::pi(p)) / 2L * erfc(t));
  if (max_order >= 1) g.push_back(half_e);
  // G_j = (j-1)/2 G_{j-2} + t^{j-1} e^{-t^2}/2, by parts against x e^{-x^2}.
  Real tpow = t;  // t^{j-1} for j = 2
  for (unsigned j = 2; j <= max_order; ++j) {
    g.push_back(g[j - 2] * static_cast<long>(j - 1) / 2L + tpow * half_e);
    tpow = tpow * t;
  }
  return g;
}

Real gauss_tail_moment(unsigned j, const Real& t) { return gauss_tail_moments(j, t)[j]; }

Real relative_difference(const Real& a, const Real& b) {
  Real d = abs(a - b);
  Real s = max(abs(a), abs(b));
  return s.is_zero() ? d : d / s;
}

}  // namespace jumphankel

#pragma once

#include <mpfr.h>

#include <compare>
#include <concepts>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace jumphankel {

/// Working mantissa precision in bits. At least 64; 256 unless asked otherwise.
class Precision {
 public:
  static constexpr unsigned kDefaultBits = 256;
  static constexpr unsigned kMinBits = 64;

  Precision() = default;
  explicit Precision(long bits);

  unsigned bits() const { return bits_; }
  /// Decimal digits needed to round-trip a value at this precision.
  int round_trip_digits() const;

  friend bool operator==(Precision, Precision) = default;
  friend auto operator<=>(Precision, Precision) = default;

 private:
  unsigned bits_ = kDefaultBits;
};

/// Arbitrary-precision real backed by MPFR. Every value carries its own
/// precision; binary operations produce the larger of the two operand
/// precisions, so there is no process-wide precision setting.
class Real {
 public:
  Real() : Real(Precision(Precision::kMinBits)) {}
  explicit Real(Precision p);
  Real(double v, Precision p);
  template <std::integral I>
  Real(I v, Precision p) : Real(p) {
    if constexpr (std::is_signed_v<I>)
      mpfr_set_si(v_, static_cast<long>(v), MPFR_RNDN);
    else
      mpfr_set_ui(v_, static_cast<unsigned long>(v), MPFR_RNDN);
  }

  /// Parses a decimal (or "inf"/"-inf") string, correctly rounded.
  /// Throws std::invalid_argument on malformed input.
  static Real parse(std::string_view text, Precision p);
  static Real pi(Precision p);
  static Real infinity(Precision p, int sign = 1);
  /// 2^e at precision p.
  static Real pow2(long e, Precision p);

  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  Precision precision() const { return Precision(static_cast<long>(mpfr_get_prec(v_))); }
  Real rounded_to(Precision p) const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  /// Scientific notation; digits == 0 means round-trip digits for the precision.
  std::string to_string(int digits = 0) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Binary exponent e with value = m * 2^e, 0.5 <= |m| < 1. Zero gives LONG_MIN.
  long exponent() const;

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  Real operator-() const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);

  friend Real operator+(const Real& a, double b);
  friend Real operator-(const Real& a, double b);
  friend Real operator*(const Real& a, double b);
  friend Real operator/(const Real& a, double b);
  friend Real operator+(double a, const Real& b);
  friend Real operator-(double a, const Real& b);
  friend Real operator*(double a, const Real& b);
  friend Real operator/(double a, const Real& b);

  friend Real operator+(const Real& a, long b);
  friend Real operator-(const Real& a, long b);
  friend Real operator*(const Real& a, long b);
  friend Real operator/(const Real& a, long b);
  friend Real operator+(long a, const Real& b);
  friend Real operator-(long a, const Real& b);
  friend Real operator*(long a, const Real& b);
  friend Real operator/(long a, const Real& b);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, double b);

 private:
  mpfr_t v_;
};

// int literals route through long to avoid ambiguity with the double overloads.
template <std::integral I>
Real operator+(const Real& a, I b) { return a + static_cast<long>(b); }
template <std::integral I>
Real operator-(const Real& a, I b) { return a - static_cast<long>(b); }
template <std::integral I>
Real operator*(const Real& a, I b) { return a * static_cast<long>(b); }
template <std::integral I>
Real operator/(const Real& a, I b) { return a / static_cast<long>(b); }
template <std::integral I>
Real operator+(I a, const Real& b) { return static_cast<long>(a) + b; }
template <std::integral I>
Real operator-(I a, const Real& b) { return static_cast<long>(a) - b; }
template <std::integral I>
Real operator*(I a, const Real& b) { return static_cast<long>(a) * b; }
template <std::integral I>
Real operator/(I a, const Real& b) { return static_cast<long>(a) / b; }

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real tanh(const Real& x);
Real square(const Real& x);
Real pow(const Real& x, long e);
Real ldexp(const Real& x, long e);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

/// Complementary error function, correctly rounded at the argument's precision.
Real erfc(const Real& x);

/// Full-line Gaussian moment F_j = \int x^j e^{-x^2} dx (zero for odd j).
Real gauss_full_moment(unsigned j, Precision p);
/// Upper tail moment G_j(t) = \int_t^\infty x^j e^{-x^2} dx.
Real gauss_tail_moment(unsigned j, const Real& t);
/// All tail moments G_0(t) ... G_J(t) in one pass of the recurrence.
std::vector<Real> gauss_tail_moments(unsigned max_order, const Real& t);

/// |a - b| / max(|a|, |b|), or |a - b| when both are zero-ish.
Real relative_difference(const Real& a, const Real& b);

}  // namespace jumphankel

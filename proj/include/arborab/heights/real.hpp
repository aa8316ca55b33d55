#pragma once

#include <mpfr.h>

#include <string>

#include "arborab/exactnum/rational.hpp"

namespace arborab::heights {

inline constexpr mpfr_prec_t kDefaultPrecision = 256;

/// Owning MPFR real, round-to-nearest throughout.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = kDefaultPrecision);
  Real(double value, mpfr_prec_t prec);
  Real(const Rational& value, mpfr_prec_t prec);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Scientific notation with `digits` significant decimal digits.
  std::string to_string(int digits = 20) const;

  Real& operator+=(const Real& other);
  Real& operator-=(const Real& other);
  Real& operator*=(const Real& other);
  Real& operator/=(const Real& other);

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  Real operator-() const;

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_); }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.value_, b.value_); }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.value_, b.value_); }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.value_, b.value_); }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_); }

 private:
  mpfr_t value_;
};

Real abs(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real sqrt(const Real& x);
Real max(const Real& a, const Real& b);
/// log of a positive integer, without converting it to a float first.
Real log(const Integer& n, mpfr_prec_t prec);
/// 2^e at the given precision.
Real pow2(long e, mpfr_prec_t prec);

}  // namespace arborab::heights

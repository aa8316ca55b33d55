#include "arborab/heights/real.hpp"

#include <cstdlib>
#include <memory>

namespace arborab::heights {

Real::Real(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

Real::Real(double value, mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(const Rational& value, mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

std::string Real::to_string(int digits) const {
  if (mpfr_zero_p(value_)) return "0";
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  mpfr_exp_t exponent = 0;
  std::unique_ptr<char, void (*)(char*)> raw(mpfr_get_str(nullptr, &exponent, 10, digits, value_, MPFR_RNDN),
                                              mpfr_free_str);
  std::string mantissa(raw.get());
  std::string sign;
  if (mantissa.front() == '-') {
    sign = "-";
    mantissa.erase(0, 1);
  }
  std::string out = sign + mantissa.substr(0, 1);
  if (mantissa.size() > 1) out += "." + mantissa.substr(1);
  out += "e" + std::to_string(static_cast<long>(exponent) - 1);
  return out;
}

Real& Real::operator+=(const Real& other) {
  mpfr_add(value_, value_, other.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& other) {
  mpfr_sub(value_, value_, other.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& other) {
  mpfr_mul(value_, value_, other.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& other) {
  mpfr_div(value_, value_, other.value_, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real out(*this);
  mpfr_neg(out.value_, out.value_, MPFR_RNDN);
  return out;
}

Real abs(const Real& x) {
  Real out(x);
  mpfr_abs(out.get(), out.get(), MPFR_RNDN);
  return out;
}

Real log(const Real& x) {
  Real out(x.precision());
  mpfr_log(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Real exp(const Real& x) {
  Real out(x.precision());
  mpfr_exp(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Real sqrt(const Real& x) {
  Real out(x.precision());
  mpfr_sqrt(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real log(const Integer& n, mpfr_prec_t prec) {
  if (sgn(n) <= 0) throw DomainError("log of a non-positive integer");
  Real out(prec);
  mpfr_set_z(out.get(), n.get_mpz_t(), MPFR_RNDN);
  mpfr_log(out.get(), out.get(), MPFR_RNDN);
  return out;
}

Real pow2(long e, mpfr_prec_t prec) {
  Real out(prec);
  mpfr_set_ui_2exp(out.get(), 1, e, MPFR_RNDN);
  return out;
}

}  // namespace arborab::heights

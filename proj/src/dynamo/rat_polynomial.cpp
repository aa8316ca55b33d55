#include "arborab/dynamo/rat_polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace arborab::dynamo {

RatPolynomial::RatPolynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

RatPolynomial::RatPolynomial(std::initializer_list<Rational> coefficients)
    : RatPolynomial(std::vector<Rational>(coefficients)) {}

RatPolynomial RatPolynomial::constant(const Rational& value) { return RatPolynomial({value}); }

RatPolynomial RatPolynomial::x() { return RatPolynomial({Rational(0), Rational(1)}); }

RatPolynomial RatPolynomial::monomial(const Rational& coefficient, std::size_t degree) {
  std::vector<Rational> c(degree + 1, Rational(0));
  c[degree] = coefficient;
  return RatPolynomial(std::move(c));
}

void RatPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RatPolynomial::coefficient(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : Rational(0);
}

Rational RatPolynomial::leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

Rational RatPolynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RatPolynomial RatPolynomial::compose(const RatPolynomial& inner) const {
  RatPolynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * inner + RatPolynomial::constant(*it);
  }
  return acc;
}

RatPolynomial RatPolynomial::operator+(const RatPolynomial& other) const {
  std::vector<Rational> out(std::max(coeffs_.size(), other.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) out[i] += other.coeffs_[i];
  return RatPolynomial(std::move(out));
}

RatPolynomial RatPolynomial::operator-(const RatPolynomial& other) const {
  return *this + other * Rational(-1);
}

RatPolynomial RatPolynomial::operator*(const RatPolynomial& other) const {
  if (is_zero() || other.is_zero()) return {};
  std::vector<Rational> out(coeffs_.size() + other.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
  }
  return RatPolynomial(std::move(out));
}

RatPolynomial RatPolynomial::operator*(const Rational& scalar) const {
  std::vector<Rational> out = coeffs_;
  for (auto& c : out) c *= scalar;
  return RatPolynomial(std::move(out));
}

std::string RatPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    const bool negative = sgn(c) < 0;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    const Rational mag = abs(c);
    if (mag != 1 || k == 0) {
      os << mag.get_str();
      if (k > 0) os << "*";
    }
    if (k >= 1) os << "x";
    if (k >= 2) os << "^" << k;
    first = false;
  }
  return os.str();
}

}  // namespace arborab::dynamo

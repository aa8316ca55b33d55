#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "arborab/exactnum/rational.hpp"

namespace arborab::dynamo {

/// Dense univariate polynomial over Q, coefficients low-to-high, trailing
/// zeros trimmed (the zero polynomial has no coefficients).
class RatPolynomial {
 public:
  RatPolynomial() = default;
  explicit RatPolynomial(std::vector<Rational> coefficients);
  RatPolynomial(std::initializer_list<Rational> coefficients);

  static RatPolynomial constant(const Rational& value);
  static RatPolynomial x();
  static RatPolynomial monomial(const Rational& coefficient, std::size_t degree);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(std::size_t k) const;
  Rational leading() const;

  Rational operator()(const Rational& x) const;
  /// this(inner(x)).
  RatPolynomial compose(const RatPolynomial& inner) const;

  RatPolynomial operator+(const RatPolynomial& other) const;
  RatPolynomial operator-(const RatPolynomial& other) const;
  RatPolynomial operator*(const RatPolynomial& other) const;
  RatPolynomial operator*(const Rational& scalar) const;

  friend bool operator==(const RatPolynomial&, const RatPolynomial&) = default;

  /// Human-readable form, e.g. "x^2 - 2".
  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace arborab::dynamo

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "arborab/dynamo/rat_polynomial.hpp"
#include "arborab/exactnum/rational.hpp"

namespace arborab::heights {

/// Primitive integer polynomial with positive leading coefficient,
/// coefficients low-to-high. Construction divides out the content and fixes
/// the sign, so the stored polynomial is a unit multiple of the input.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Integer> coefficients);
  /// Clears denominators of a nonzero rational polynomial.
  static IntPolynomial from_rational(const dynamo::RatPolynomial& p);

  bool is_zero() const { return coeffs_.empty(); }
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Integer>& coefficients() const { return coeffs_; }
  const Integer& coefficient(std::size_t k) const { return coeffs_.at(k); }
  const Integer& leading() const { return coeffs_.back(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

  Integer operator()(const Integer& x) const;
  IntPolynomial operator*(const IntPolynomial& other) const;
  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  /// Quotient if `divisor` divides this exactly in Z[x].
  std::optional<IntPolynomial> divide_exact(const IntPolynomial& divisor) const;

  std::string to_string() const;

 private:
  std::vector<Integer> coeffs_;
};

/// The m-th cyclotomic polynomial, m >= 1.
IntPolynomial cyclotomic(unsigned long m);
unsigned long euler_phi(unsigned long m);

}  // namespace arborab::heights

#pragma once

#include <vector>

#include "arborab/exactnum/rational.hpp"

namespace arborab::obstruct {

/// a + b*sqrt(D) in Q(sqrt(D)), D squarefree; D = 1 stands for Q itself
/// (b must then be 0).
struct QuadraticElement {
  Rational a = 0;
  Rational b = 0;
  Integer D = 1;

  QuadraticElement operator*(const QuadraticElement& other) const;
  QuadraticElement pow(unsigned e) const;
  friend bool operator==(const QuadraticElement&, const QuadraticElement&) = default;
};

/// All square roots of z inside the same field.
std::vector<QuadraticElement> square_roots(const QuadraticElement& z);

/// Whether z = y^(2^k) for some y in the field.
bool is_two_power_power(const QuadraticElement& z, unsigned k);

}  // namespace arborab::obstruct

#include "arborab/obstruct/quadratic_field.hpp"

#include <algorithm>

namespace arborab::obstruct {

QuadraticElement QuadraticElement::operator*(const QuadraticElement& o) const {
  if (D != o.D) throw DomainError("quadratic elements from different fields");
  return {a * o.a + Rational(D) * b * o.b, a * o.b + b * o.a, D};
}

QuadraticElement QuadraticElement::pow(unsigned e) const {
  QuadraticElement acc{1, 0, D};
  for (unsigned i = 0; i < e; ++i) acc = acc * *this;
  return acc;
}

std::vector<QuadraticElement> square_roots(const QuadraticElement& z) {
  std::vector<QuadraticElement> out;
  auto add_pair = [&](const Rational& x, const Rational& y) {
    out.push_back({x, y, z.D});
    if (x != 0 || y != 0) out.push_back({-x, -y, z.D});
  };
  if (z.b == 0) {
    if (const auto r = exactnum::exact_sqrt(z.a)) add_pair(*r, 0);
    if (z.D != 1 && z.a != 0) {
      if (const auto t = exactnum::exact_sqrt(z.a / Rational(z.D))) add_pair(0, *t);
    }
    return out;
  }
  // (x + y sqrt D)^2 = z  =>  x^2 = (a +- sqrt(N(z)))/2, y = b / (2x).
  const auto n = exactnum::exact_sqrt(z.a * z.a - Rational(z.D) * z.b * z.b);
  if (!n) return out;
  for (const Rational& s : {*n, Rational(-*n)}) {
    const auto x = exactnum::exact_sqrt((z.a + s) / 2);
    if (x && *x != 0) add_pair(*x, z.b / (2 * *x));
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
    return l.a != r.a ? l.a < r.a : l.b < r.b;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_two_power_power(const QuadraticElement& z, unsigned k) {
  std::vector<QuadraticElement> frontier{z};
  for (unsigned level = 0; level < k && !frontier.empty(); ++level) {
    std::vector<QuadraticElement> next;
    for (const auto& s : frontier) {
      for (auto& r : square_roots(s)) {
        if (std::find(next.begin(), next.end(), r) == next.end()) next.push_back(std::move(r));
      }
    }
    frontier = std::move(next);
  }
  return !frontier.empty();
}

}  // namespace arborab::obstruct

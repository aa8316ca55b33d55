#include "arborab/exactnum/rational.hpp"

#include <cctype>

namespace arborab::exactnum {

namespace {

bool valid_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer integer_from(std::string_view s) {
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Integer parse_integer(std::string_view text) {
  if (!valid_integer_text(text)) {
    throw ParseError("malformed integer: '" + std::string(text) + "'");
  }
  return integer_from(text);
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text));
  }
  const auto num_text = text.substr(0, slash);
  const auto den_text = text.substr(slash + 1);
  if (!valid_integer_text(num_text) || !valid_integer_text(den_text) ||
      den_text[0] == '-' || den_text[0] == '+') {
    throw ParseError("malformed rational: '" + std::string(text) + "'");
  }
  const Integer den = integer_from(den_text);
  if (den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  return make_rational(integer_from(num_text), den);
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::string to_string(const Integer& n) { return n.get_str(10); }

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

bool is_square(const Integer& n) { return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

bool is_square(const Rational& q) {
  return is_square(q.get_num()) && is_square(q.get_den());
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (!is_square(q)) return std::nullopt;
  return Rational(sqrt(q.get_num()), sqrt(q.get_den()));
}

}  // namespace arborab::exactnum

#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace arborab {

using Integer = mpz_class;
/// Always canonical (lowest terms, positive denominator); zero is 0/1.
using Rational = mpq_class;

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace exactnum {

/// Accepts "a" or "a/b" with optional leading sign; rejects b = 0 and junk.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

/// "num/den", with "/den" omitted when den = 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& n);

Rational make_rational(const Integer& num, const Integer& den);

bool is_square(const Integer& n);
bool is_square(const Rational& q);
std::optional<Rational> exact_sqrt(const Rational& q);

}  // namespace exactnum
}  // namespace arborab

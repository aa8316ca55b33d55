#include <doctest.h>

#include <random>
#include <set>

#include "arborab/exactnum/factor.hpp"
#include "arborab/exactnum/rational.hpp"
#include "arborab/exactnum/square_class.hpp"

using namespace arborab;
using namespace arborab::exactnum;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("+5") == 5);
  CHECK(to_string(Rational(-1, 2)) == "-1/2");
  CHECK(to_string(make_rational(4, 2)) == "2");
  CHECK(to_string(make_rational(3, -6)) == "-1/2");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
}

TEST_CASE("exact squares") {
  CHECK(is_square(Rational(9, 4)));
  CHECK(is_square(Rational(0)));
  CHECK_FALSE(is_square(Rational(-4)));
  CHECK_FALSE(is_square(Rational(2, 9)));
  CHECK(exact_sqrt(Rational(49, 25)) == Rational(7, 5));
  CHECK_FALSE(exact_sqrt(Rational(1, 2)).has_value());
}

TEST_CASE("factoring round-trips") {
  std::mt19937_64 rng(7);
  const Integer big_primes[] = {Integer("1000000007"), Integer("998244353"), Integer("4294967311"),
                                Integer("18446744073709551557")};
  for (int trial = 0; trial < 20; ++trial) {
    Integer n = 1;
    for (const auto& p : big_primes) {
      if (rng() % 2) n *= p;
    }
    n *= Integer(static_cast<unsigned long>(rng() % 100000 + 1));
    const auto f = factor(n);
    CHECK(f.value() == n);
    for (const auto& [p, e] : f.factors) CHECK(is_prime(p));
  }
  CHECK(factor(Integer(-12)).sign == -1);
  CHECK(factor(Integer(1)).factors.empty());
  CHECK_THROWS_AS(factor(Integer(0)), DomainError);
}

TEST_CASE("primality on Carmichael numbers and strong pseudoprimes") {
  for (unsigned long n : {561UL, 1105UL, 1729UL, 2047UL, 3215031751UL}) CHECK_FALSE(is_prime(Integer(n)));
  CHECK(is_prime(Integer("2305843009213693951")));
}

TEST_CASE("squarefree parts") {
  CHECK(squarefree_part(Rational(1, 2)).value() == 2);
  CHECK(squarefree_part(Rational(-1, 2)).value() == -2);
  CHECK(squarefree_part(Rational(18, 25)).value() == 2);
  CHECK(squarefree_part(Rational(4)).is_trivial());
  CHECK(squarefree_part(Rational(0)).is_zero());
  CHECK((squarefree_part(Rational(6)) * squarefree_part(Rational(10))).value() == 15);
}

TEST_CASE("p-adic valuations") {
  CHECK(padic_valuation(Rational(24, 5), Integer(2)) == 3);
  CHECK(padic_valuation(Rational(24, 5), Integer(5)) == -1);
  CHECK(padic_valuation(Rational(24, 5), Integer(7)) == 0);
  CHECK_THROWS_AS(padic_valuation(Rational(0), Integer(2)), DomainError);
  CHECK_THROWS_AS(padic_valuation(Rational(3), Integer(4)), DomainError);
}

namespace {

// Dimension by brute force: 2^dim distinct classes among subset products.
std::size_t brute_dimension(const std::vector<Rational>& values) {
  std::set<Integer> seen;
  const std::size_t n = values.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Rational product = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) product *= values[i];
    }
    seen.insert(squarefree_part(product).value());
  }
  std::size_t dim = 0;
  while ((std::size_t{1} << dim) < seen.size()) ++dim;
  return dim;
}

}  // namespace

TEST_CASE("F2 span dimension agrees with subset products") {
  std::mt19937_64 rng(11);
  const long pool[] = {-1, 2, 3, 5, 6, 7, 10, 15, 21, 30, 35, 42, -6, 4, 9};
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    std::vector<Rational> values;
    std::vector<SquareClass> classes;
    for (std::size_t i = 0; i < n; ++i) {
      const Rational v = make_rational(pool[rng() % std::size(pool)], pool[rng() % 4 + 1]);
      values.push_back(v);
      classes.push_back(squarefree_part(v));
    }
    const auto span = f2_span_dimension(classes);
    REQUIRE(span.dimension == brute_dimension(values));
    CHECK(span.witness.size() == span.dimension);
    std::vector<Rational> picked;
    for (auto i : span.witness) picked.push_back(values.at(i - 1));
    CHECK(brute_dimension(picked) == span.dimension);
  }
}

TEST_CASE("worked square classes have dimension 2") {
  std::vector<SquareClass> classes{squarefree_part(Rational(1, 2)), squarefree_part(Rational(1, 2)),
                                   squarefree_part(Rational(-1, 2))};
  CHECK(classes[0].value() == 2);
  CHECK(classes[2].value() == -2);
  const auto span = f2_span_dimension(classes);
  CHECK(span.dimension == 2);
  CHECK(span.witness == std::vector<std::size_t>{1, 3});
}

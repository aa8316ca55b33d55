#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "arborab/exactnum/factor.hpp"
#include "arborab/exactnum/rational.hpp"

namespace arborab::exactnum {

/// An element of Q*/Q*^2, normalized to a squarefree signed integer, or the
/// ZERO marker standing for 0 (which has no class).
class SquareClass {
 public:
  static SquareClass zero() { return SquareClass(); }
  static SquareClass one() { return SquareClass(1, {}); }
  /// Throws DomainError unless value is a nonzero squarefree integer.
  static SquareClass from_squarefree(const Integer& value, const FactorOptions& options = {});

  bool is_zero() const { return is_zero_; }
  bool is_trivial() const { return !is_zero_ && sign_ > 0 && primes_.empty(); }
  int sign() const { return sign_; }
  /// Sorted ascending, each prime once.
  const std::vector<Integer>& primes() const { return primes_; }
  Integer value() const;

  SquareClass operator*(const SquareClass& other) const;

  friend bool operator==(const SquareClass&, const SquareClass&) = default;

 private:
  SquareClass() = default;
  SquareClass(int sign, std::vector<Integer> primes)
      : is_zero_(false), sign_(sign), primes_(std::move(primes)) {}

  bool is_zero_ = true;
  int sign_ = 0;
  std::vector<Integer> primes_;

  friend SquareClass squarefree_part(const Rational&, const FactorOptions&);
};

SquareClass squarefree_part(const Rational& q, const FactorOptions& options = {});

/// Throws DomainError on q = 0 or p not prime.
long padic_valuation(const Rational& q, const Integer& p);
long padic_valuation(const Integer& n, const Integer& p);

struct SpanResult {
  std::size_t dimension = 0;
  /// 1-based input positions of a maximal independent subset, chosen greedily
  /// left to right.
  std::vector<std::size_t> witness;
};

SpanResult f2_span_dimension(std::span<const SquareClass> classes);

}  // namespace arborab::exactnum

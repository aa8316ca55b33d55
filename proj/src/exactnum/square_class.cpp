#include "arborab/exactnum/square_class.hpp"

#include <algorithm>
#include <cstdint>

namespace arborab::exactnum {

SquareClass SquareClass::from_squarefree(const Integer& value, const FactorOptions& options) {
  if (value == 0) throw DomainError("square class of 0 is the ZERO marker, not a value");
  const FactoredInteger f = factor(value, options);
  std::vector<Integer> primes;
  for (const auto& [p, e] : f.factors) {
    if (e != 1) throw DomainError("not squarefree: " + to_string(value));
    primes.push_back(p);
  }
  return SquareClass(f.sign, std::move(primes));
}

Integer SquareClass::value() const {
  if (is_zero_) throw DomainError("ZERO square class has no value");
  Integer v = sign_;
  for (const auto& p : primes_) v *= p;
  return v;
}

SquareClass SquareClass::operator*(const SquareClass& other) const {
  if (is_zero_ || other.is_zero_) return zero();
  std::vector<Integer> merged;
  std::set_symmetric_difference(primes_.begin(), primes_.end(), other.primes_.begin(),
                                other.primes_.end(), std::back_inserter(merged));
  return SquareClass(sign_ * other.sign_, std::move(merged));
}

SquareClass squarefree_part(const Rational& q, const FactorOptions& options) {
  if (q == 0) return SquareClass::zero();
  // q = n/d lies in the class of n*d; factor the two halves separately.
  std::map<Integer, unsigned> parity;
  for (const Integer* part : {&q.get_num(), &q.get_den()}) {
    for (const auto& [p, e] : factor(*part, options).factors) {
      if (e % 2 == 1) parity[p] ^= 1u;
    }
  }
  std::vector<Integer> primes;
  for (const auto& [p, odd] : parity) {
    if (odd) primes.push_back(p);
  }
  return SquareClass(sgn(q) < 0 ? -1 : 1, std::move(primes));
}

long padic_valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw DomainError("valuation of 0 is +infinity");
  if (!is_prime(p)) throw DomainError("not a prime: " + to_string(p));
  Integer m = n;
  return static_cast<long>(mpz_remove(m.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long padic_valuation(const Rational& q, const Integer& p) {
  if (q == 0) throw DomainError("valuation of 0 is +infinity");
  return padic_valuation(q.get_num(), p) - padic_valuation(q.get_den(), p);
}

SpanResult f2_span_dimension(std::span<const SquareClass> classes) {
  // Coordinates: 0 is the sign (class of -1), then one per distinct prime.
  std::vector<Integer> basis_primes;
  for (const auto& c : classes) {
    if (c.is_zero()) continue;
    basis_primes.insert(basis_primes.end(), c.primes().begin(), c.primes().end());
  }
  std::sort(basis_primes.begin(), basis_primes.end());
  basis_primes.erase(std::unique(basis_primes.begin(), basis_primes.end()), basis_primes.end());
  const std::size_t width = basis_primes.size() + 1;
  const std::size_t words = (width + 63) / 64;

  using Row = std::vector<std::uint64_t>;
  auto to_row = [&](const SquareClass& c) {
    Row row(words, 0);
    auto set = [&](std::size_t bit) { row[bit / 64] ^= std::uint64_t{1} << (bit % 64); };
    if (c.sign() < 0) set(0);
    for (const auto& p : c.primes()) {
      const auto it = std::lower_bound(basis_primes.begin(), basis_primes.end(), p);
      set(1 + static_cast<std::size_t>(it - basis_primes.begin()));
    }
    return row;
  };
  auto lowest_bit = [&](const Row& row) -> std::ptrdiff_t {
    for (std::size_t w = 0; w < words; ++w) {
      if (row[w] != 0) return static_cast<std::ptrdiff_t>(w * 64 + __builtin_ctzll(row[w]));
    }
    return -1;
  };

  // Echelon rows keyed by pivot bit; reduce each new row against them.
  std::vector<std::pair<std::size_t, Row>> echelon;
  SpanResult result;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].is_zero()) continue;
    Row row = to_row(classes[i]);
    for (const auto& [pivot, prow] : echelon) {
      if ((row[pivot / 64] >> (pivot % 64)) & 1u) {
        for (std::size_t w = 0; w < words; ++w) row[w] ^= prow[w];
      }
    }
    const auto pivot = lowest_bit(row);
    if (pivot < 0) continue;
    echelon.emplace_back(static_cast<std::size_t>(pivot), std::move(row));
    result.witness.push_back(i + 1);
  }
  result.dimension = echelon.size();
  return result;
}

}  // namespace arborab::exactnum

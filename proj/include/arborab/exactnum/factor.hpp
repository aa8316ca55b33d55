#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <stdexcept>

#include "arborab/exactnum/rational.hpp"

namespace arborab::exactnum {

struct FactoredInteger {
  int sign = 1;
  std::map<Integer, unsigned> factors;

  Integer value() const;
  friend bool operator==(const FactoredInteger&, const FactoredInteger&) = default;
};

struct FactorOptions {
  std::chrono::milliseconds budget{60'000};
  std::uint64_t seed = 0x2545F4914F6CDD1DULL;
};

class FactorBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Trial division below 2^16, then Brent's rho on composite cofactors.
/// Throws DomainError on 0 and FactorBudgetExceeded when the rho search runs
/// past options.budget.
FactoredInteger factor(const Integer& n, const FactorOptions& options = {});

/// Miller-Rabin with the first twelve prime bases below 2^64 (deterministic
/// there); BPSW-backed mpz_probab_prime_p above.
bool is_prime(const Integer& n);

}  // namespace arborab::exactnum

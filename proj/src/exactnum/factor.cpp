#include "arborab/exactnum/factor.hpp"

#include <array>
#include <random>
#include <vector>

namespace arborab::exactnum {

namespace {

constexpr unsigned kTrialBound = 1u << 16;

const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    std::vector<bool> composite(kTrialBound, false);
    std::vector<unsigned> out;
    for (unsigned i = 2; i < kTrialBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned long j = static_cast<unsigned long>(i) * i; j < kTrialBound; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool miller_rabin_64(const Integer& n) {
  static constexpr std::array<unsigned, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  Integer d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  Integer x;
  const Integer n_minus_1 = n - 1;
  for (unsigned a : bases) {
    if (n == a) return true;
    if (n % a == 0) return false;
    mpz_powm(x.get_mpz_t(), Integer(a).get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) continue;
    bool witness = true;
    for (unsigned r = 1; r < s; ++r) {
      x = (x * x) % n;
      if (x == n_minus_1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

class Splitter {
 public:
  Splitter(const FactorOptions& options)
      : rng_(options.seed), deadline_(std::chrono::steady_clock::now() + options.budget) {}

  void split(const Integer& n, unsigned multiplicity, std::map<Integer, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
      out[n] += multiplicity;
      return;
    }
    if (mpz_perfect_power_p(n.get_mpz_t())) {
      const auto bits = mpz_sizeinbase(n.get_mpz_t(), 2);
      for (unsigned long k = bits; k >= 2; --k) {
        Integer root;
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
          split(root, multiplicity * static_cast<unsigned>(k), out);
          return;
        }
      }
    }
    const Integer d = find_divisor(n);
    split(d, multiplicity, out);
    split(n / d, multiplicity, out);
  }

 private:
  // Brent's cycle-finding variant with batched gcds.
  Integer find_divisor(const Integer& n) {
    std::uniform_int_distribution<unsigned long> dist(1, 1ul << 40);
    for (;;) {
      if (std::chrono::steady_clock::now() > deadline_) {
        throw FactorBudgetExceeded("factorization budget exhausted on " +
                                   std::to_string(mpz_sizeinbase(n.get_mpz_t(), 10)) + "-digit cofactor");
      }
      const Integer c = Integer(static_cast<unsigned long>(dist(rng_))) % n;
      Integer y = Integer(static_cast<unsigned long>(dist(rng_))) % n;
      Integer x, ys, q = 1, g = 1;
      constexpr unsigned long kBatch = 128;
      unsigned long r = 1;
      while (g == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
        unsigned long k = 0;
        while (k < r && g == 1) {
          ys = y;
          const unsigned long steps = std::min(kBatch, r - k);
          for (unsigned long i = 0; i < steps; ++i) {
            y = (y * y + c) % n;
            q = (q * abs(x - y)) % n;
          }
          g = gcd(q, n);
          k += steps;
        }
        r *= 2;
        if (r > (1ul << 26)) break;
        if ((r & 0xff) == 0 && std::chrono::steady_clock::now() > deadline_) break;
      }
      if (g == n) {
        do {
          ys = (ys * ys + c) % n;
          g = gcd(abs(x - ys), n);
        } while (g == 1);
      }
      if (g != n && g != 1) return g;
    }
  }

  std::mt19937_64 rng_;
  std::chrono::steady_clock::time_point deadline_;
};

}  // namespace

Integer FactoredInteger::value() const {
  Integer v = sign;
  for (const auto& [p, e] : factors) {
    Integer pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    v *= pe;
  }
  return v;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (mpz_even_p(n.get_mpz_t())) return false;
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) return miller_rabin_64(n);
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

FactoredInteger factor(const Integer& n, const FactorOptions& options) {
  if (n == 0) throw DomainError("factor: zero has no factorization");
  FactoredInteger result;
  result.sign = sgn(n) < 0 ? -1 : 1;
  Integer m = abs(n);
  for (unsigned p : small_primes()) {
    if (Integer(p) * p > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++e;
      }
      result.factors[Integer(p)] = e;
    }
  }
  if (m == 1) return result;
  if (m < Integer(kTrialBound) * kTrialBound) {
    result.factors[m] += 1;
    return result;
  }
  Splitter(options).split(m, 1, result.factors);
  return result;
}

}  // namespace arborab::exactnum

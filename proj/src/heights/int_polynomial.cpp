#include "arborab/heights/int_polynomial.hpp"

#include <sstream>

namespace arborab::heights {

namespace {

void trim(std::vector<Integer>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

// Exact division by a polynomial whose leading coefficient may differ from 1;
// nullopt as soon as a quotient coefficient is not integral or the remainder
// is nonzero.
std::optional<std::vector<Integer>> divide_raw(std::vector<Integer> num, const std::vector<Integer>& den) {
  if (den.empty()) throw DomainError("division by the zero polynomial");
  if (num.size() < den.size()) {
    trim(num);
    if (num.empty()) return std::vector<Integer>{};
    return std::nullopt;
  }
  const std::size_t dq = num.size() - den.size();
  std::vector<Integer> q(dq + 1);
  const Integer& lead = den.back();
  for (std::size_t k = dq + 1; k-- > 0;) {
    Integer& top = num[k + den.size() - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) return std::nullopt;
    q[k] = top / lead;
    for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= q[k] * den[j];
  }
  for (std::size_t j = 0; j + 1 < den.size() && j < num.size(); ++j) {
    if (num[j] != 0) return std::nullopt;
  }
  return q;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<Integer> coefficients) : coeffs_(std::move(coefficients)) {
  trim(coeffs_);
  if (coeffs_.empty()) return;
  Integer content = 0;
  for (const auto& a : coeffs_) content = gcd(content, a);
  if (coeffs_.back() < 0) content = -content;
  if (content != 1) {
    for (auto& a : coeffs_) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), content.get_mpz_t());
  }
}

IntPolynomial IntPolynomial::from_rational(const dynamo::RatPolynomial& p) {
  if (p.is_zero()) throw DomainError("from_rational: zero polynomial");
  Integer common = 1;
  for (const auto& a : p.coefficients()) common = lcm(common, Integer(a.get_den()));
  std::vector<Integer> out;
  out.reserve(p.coefficients().size());
  for (const auto& a : p.coefficients()) out.push_back(a.get_num() * (common / a.get_den()));
  return IntPolynomial(std::move(out));
}

Integer IntPolynomial::operator()(const Integer& x) const {
  Integer acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& other) const {
  if (is_zero() || other.is_zero()) return {};
  std::vector<Integer> out(coeffs_.size() + other.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), coeffs_[i].get_mpz_t(), other.coeffs_[j].get_mpz_t());
    }
  }
  return IntPolynomial(std::move(out));
}

std::optional<IntPolynomial> IntPolynomial::divide_exact(const IntPolynomial& divisor) const {
  auto q = divide_raw(coeffs_, divisor.coeffs_);
  if (!q) return std::nullopt;
  return IntPolynomial(std::move(*q));
}

std::string IntPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Integer& a = coeffs_[k];
    if (a == 0) continue;
    const Integer mag = abs(a);
    if (first) {
      if (a < 0) out << "-";
    } else {
      out << (a < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || k == 0) out << mag.get_str();
    if (k > 0) out << "x";
    if (k > 1) out << "^" << k;
  }
  return out.str();
}

unsigned long euler_phi(unsigned long m) {
  if (m == 0) throw DomainError("euler_phi(0)");
  unsigned long result = m;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

IntPolynomial cyclotomic(unsigned long m) {
  if (m == 0) throw DomainError("cyclotomic(0)");
  // Phi_m = prod_{d | m} (x^d - 1)^{mu(m/d)}: multiply the mu = +1 factors,
  // then divide out the mu = -1 ones.
  std::vector<unsigned long> primes;
  unsigned long rest = m;
  for (unsigned long p = 2; p * p <= rest; ++p) {
    if (rest % p == 0) {
      primes.push_back(p);
      while (rest % p == 0) rest /= p;
    }
  }
  if (rest > 1) primes.push_back(rest);
  std::vector<Integer> num{1};
  std::vector<std::vector<Integer>> denominators;
  for (std::size_t mask = 0; mask < (std::size_t{1} << primes.size()); ++mask) {
    unsigned long d = m;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (mask & (std::size_t{1} << i)) d /= primes[i];
    }
    std::vector<Integer> binomial(d + 1);
    binomial[0] = -1;
    binomial[d] = 1;
    if (__builtin_popcountll(mask) % 2 == 0) {
      std::vector<Integer> out(num.size() + d);
      for (std::size_t i = 0; i < num.size(); ++i) {
        out[i] -= num[i];
        out[i + d] += num[i];
      }
      num = std::move(out);
    } else {
      denominators.push_back(std::move(binomial));
    }
  }
  for (const auto& den : denominators) num = *divide_raw(std::move(num), den);
  return IntPolynomial(std::move(num));
}

}  // namespace arborab::heights

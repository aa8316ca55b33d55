#include "arborab/heights/heights.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "arborab/dynamo/dynamics.hpp"
#include "arborab/exactnum/square_class.hpp"

namespace arborab::heights {

namespace {

Real ulp_bound(const Real& x) {
  Real out = abs(x);
  mpfr_mul_2si(out.get(), out.get(), 2 - static_cast<long>(x.precision()), MPFR_RNDU);
  return out;
}

Real log43(mpfr_prec_t prec) { return log(Real(Rational(4, 3), prec)); }

// R = max(2, 2|c|): for |x| >= R, log|f(x)| = 2 log|x| + delta, |delta| <= log(4/3).
Real escape_radius(const Rational& c, mpfr_prec_t prec) {
  const Rational r = 2 * abs(c);
  return Real(r > 2 ? r : Rational(2), prec);
}

// sup of the archimedean Green function on |x| < R.
Real interior_bound(const Rational& c, mpfr_prec_t prec) {
  const Real R = escape_radius(c, prec);
  Real b = log(R * R + Real(abs(c), prec)) + log43(prec);
  mpfr_div_2ui(b.get(), b.get(), 1, MPFR_RNDU);
  return b;
}

std::size_t bits(const Rational& q) {
  return std::max(mpz_sizeinbase(q.get_num_mpz_t(), 2), mpz_sizeinbase(q.get_den_mpz_t(), 2));
}

// Exact orbit until a repeat, an escape past the size caps, or the step cap.
bool orbit_cycles(const Rational& c, const Rational& x0, std::size_t steps, std::size_t max_bits) {
  std::set<Rational> seen;
  Rational x = x0;
  for (std::size_t k = 0; k <= steps; ++k) {
    if (!seen.insert(x).second) return true;
    if (bits(x) > max_bits) return false;
    x = dynamo::quadratic_step(c, x);
  }
  return false;
}

// Phi_m(2) = prod_{d | m} (2^d - 1)^mu(m / d).
Integer cyclotomic_at_two(unsigned long m) {
  std::vector<unsigned long> primes;
  unsigned long rest = m;
  for (unsigned long q = 2; q * q <= rest; ++q) {
    if (rest % q != 0) continue;
    primes.push_back(q);
    while (rest % q == 0) rest /= q;
  }
  if (rest > 1) primes.push_back(rest);
  Integer num = 1, den = 1;
  for (std::size_t mask = 0; mask < (std::size_t{1} << primes.size()); ++mask) {
    unsigned long d = m;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (mask & (std::size_t{1} << i)) d /= primes[i];
    }
    Integer term;
    mpz_ui_pow_ui(term.get_mpz_t(), 2, d);
    term -= 1;
    (__builtin_popcountll(mask) % 2 == 0 ? num : den) *= term;
  }
  return num / den;
}

struct Local {
  Real value;
  Real error;
};

// Green function at infinity, accurate to `target`.
Local archimedean(const Rational& c, const Rational& gamma, const Real& target, mpfr_prec_t prec) {
  const mpfr_prec_t work = prec + 128;
  const Real R = escape_radius(c, work);
  const Real tail = log43(work);
  const Real interior = interior_bound(c, work);
  const Real cr(c, work);
  Real x(gamma, work);
  Real scale(1.0, work);  // 2^-k
  for (long k = 0;; ++k) {
    const Real ax = abs(x);
    if (ax >= R) {
      // Past R the orbit is followed in log space, L' = 2L + log|1 + c e^(-2L)|,
      // which keeps exponents small.
      Real L = log(ax);
      Real t(work);
      for (; !(tail * scale <= target); ++k) {
        mpfr_mul_2ui(t.get(), L.get(), 1, MPFR_RNDN);
        mpfr_neg(t.get(), t.get(), MPFR_RNDN);
        mpfr_exp(t.get(), t.get(), MPFR_RNDN);
        t *= cr;
        mpfr_log1p(t.get(), t.get(), MPFR_RNDN);
        mpfr_mul_2ui(L.get(), L.get(), 1, MPFR_RNDN);
        L += t;
        mpfr_div_2ui(scale.get(), scale.get(), 1, MPFR_RNDN);
      }
      Local out{L * scale, tail * scale};
      Real rounding(static_cast<double>(k + 1), prec);
      mpfr_mul_2si(rounding.get(), rounding.get(), 4 - static_cast<long>(prec), MPFR_RNDU);
      out.error += rounding;
      return out;
    }
    if (interior * scale <= target) {
      // Still bounded: the value lies in [0, B 2^-k].
      Real half = interior * scale;
      mpfr_div_2ui(half.get(), half.get(), 1, MPFR_RNDU);
      return Local{half, half};
    }
    mpfr_sqr(x.get(), x.get(), MPFR_RNDN);
    x += cr;
    mpfr_div_2ui(scale.get(), scale.get(), 1, MPFR_RNDN);
  }
}

// Local height at a prime p with e = -v_p(c) > 0.
Local bad_prime(const Rational& c, const Rational& gamma, const Integer& p, long e, const Real& target,
                mpfr_prec_t prec) {
  const Real logp = log(p, prec);
  auto result = [&](const Rational& multiple, long level) {
    Real v(multiple, prec);
    v *= logp;
    mpfr_div_2si(v.get(), v.get(), level, MPFR_RNDN);
    return Local{v, ulp_bound(v)};
  };
  if (gamma == 0) return result(Rational(e, 2), 0);
  const long v0 = exactnum::padic_valuation(gamma, p);
  if (2 * v0 < -e) return result(Rational(-v0), 0);
  if (2 * v0 > -e) return result(Rational(e, 2), 0);

  // v(gamma) = -e/2. Write x = y p^(-e/2), c = c' p^(-e); then f(x) = (y^2 + c') p^(-e)
  // and the orbit stays in this state exactly while v(y^2 + c') = e/2.
  const long h = e / 2;
  const Real whole = result(Rational(h), 0).value;
  long steps = 1;
  for (Real bound = whole; bound > target; mpfr_div_2ui(bound.get(), bound.get(), 1, MPFR_RNDU)) ++steps;
  const unsigned long digits = static_cast<unsigned long>(h) * static_cast<unsigned long>(steps + 2);
  Integer modulus;
  mpz_pow_ui(modulus.get_mpz_t(), p.get_mpz_t(), digits);
  const auto reduce = [&](const Rational& q) {
    Integer inv;
    mpz_invert(inv.get_mpz_t(), q.get_den_mpz_t(), modulus.get_mpz_t());
    Integer out = q.get_num() * inv;
    mpz_mod(out.get_mpz_t(), out.get_mpz_t(), modulus.get_mpz_t());
    return out;
  };
  Integer ph;
  mpz_pow_ui(ph.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(h));
  Integer pe = ph * ph;
  Integer y = reduce(gamma * Rational(ph));
  const Integer cprime = reduce(c * Rational(pe));
  unsigned long precision = digits;
  for (long j = 0; j < steps; ++j) {
    Integer t = y * y + cprime;
    Integer mod_now;
    mpz_pow_ui(mod_now.get_mpz_t(), p.get_mpz_t(), precision);
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), mod_now.get_mpz_t());
    if (t == 0) break;
    const long vt = static_cast<long>(mpz_remove(Integer().get_mpz_t(), t.get_mpz_t(), p.get_mpz_t()));
    if (static_cast<unsigned long>(vt) >= precision) break;
    // v(f^{j+1}(gamma)) = vt - e.
    if (vt < h) return result(Rational(e - vt), j + 1);
    if (vt > h) return result(Rational(h), j + 1);
    mpz_divexact(y.get_mpz_t(), t.get_mpz_t(), ph.get_mpz_t());
    precision -= static_cast<unsigned long>(h);
    if (precision <= static_cast<unsigned long>(h)) break;
  }
  // Still in the balanced state after `steps` levels: value in [0, (e/2) log p 2^-steps].
  Local out = result(Rational(h, 2), steps);
  out.error = out.value;
  return out;
}

}  // namespace

const char* to_string(Method method) {
  switch (method) {
    case Method::Exact: return "Exact";
    case Method::EscapeTail: return "EscapeTail";
    case Method::RootFinder: return "RootFinder";
  }
  return "?";
}

HeightEstimate weil_height(const Rational& q, mpfr_prec_t prec) {
  HeightEstimate out{Real(prec), Real(prec), Method::Exact};
  if (q == 0) return out;
  const Integer top = std::max(Integer(abs(q.get_num())), Integer(q.get_den()));
  if (top == 1) return out;
  out.value = log(top, prec);
  out.error = ulp_bound(out.value);
  return out;
}

IntPolynomial preimage_polynomial(const Rational& c, const Rational& alpha, unsigned n) {
  if (n == 0) throw DomainError("preimage_polynomial: n must be positive");
  // With c = a/b, P_k = B_k f^k(x) stays integral: P_{k+1} = b P_k^2 + a B_k^2,
  // B_{k+1} = b B_k^2.
  const Integer& a = c.get_num();
  const Integer& b = c.get_den();
  std::vector<Integer> P{0, 1};
  Integer B = 1;
  for (unsigned k = 0; k < n; ++k) {
    const std::size_t d = P.size() - 1;
    std::vector<Integer> sq(2 * d + 1);
    for (std::size_t i = 0; i <= d; ++i) {
      if (P[i] == 0) continue;
      mpz_addmul(sq[2 * i].get_mpz_t(), P[i].get_mpz_t(), P[i].get_mpz_t());
      for (std::size_t j = i + 1; j <= d; ++j) {
        if (P[j] == 0) continue;
        Integer twice = 2 * P[i];
        mpz_addmul(sq[i + j].get_mpz_t(), twice.get_mpz_t(), P[j].get_mpz_t());
      }
    }
    if (b != 1) {
      for (auto& s : sq) s *= b;
    }
    sq[0] += a * B * B;
    B = b * B * B;
    P = std::move(sq);
  }
  for (auto& coefficient : P) coefficient *= alpha.get_den();
  P[0] -= alpha.get_num() * B;
  return IntPolynomial(std::move(P));
}

HeightEstimate average_root_height(const IntPolynomial& p, const RootOptions& options) {
  const RootReport report = roots_mahler_house(p, options);
  const Real deg(static_cast<double>(p.degree()), options.precision);
  return HeightEstimate{report.log_mahler / deg, report.log_mahler_error / deg, Method::RootFinder};
}

HeightEstimate canonical_height(const Rational& c, const Rational& gamma, double eps, const CanonicalOptions& options) {
  if (!(eps > 0.0)) throw DomainError("canonical_height: eps must be positive");
  const mpfr_prec_t prec = options.precision;
  if (orbit_cycles(c, gamma, options.exact_steps, options.exact_bits)) {
    return HeightEstimate{Real(prec), Real(prec), Method::Exact};
  }

  const auto den_c = exactnum::factor(c.get_den(), options.factoring);
  const std::size_t places = 1 + den_c.factors.size();
  Real target(eps / static_cast<double>(2 * places), prec);

  const Local inf = archimedean(c, gamma, target, prec);
  HeightEstimate out{inf.value, inf.error, Method::EscapeTail};

  // Primes not dividing den(c): lambda_p = max(0, -v_p(gamma)) log p, which
  // sums to the log of the part of den(gamma) coprime to den(c).
  Integer good = gamma.get_den();
  for (Integer g = gcd(good, Integer(c.get_den())); g != 1; g = gcd(good, g)) good /= g;
  if (good != 1) {
    const Real lg = log(good, prec);
    out.value += lg;
    out.error += ulp_bound(lg);
  }
  for (const auto& [p, e] : den_c.factors) {
    const Local local = bad_prime(c, gamma, p, static_cast<long>(e), target, prec);
    out.value += local.value;
    out.error += local.error;
  }
  return out;
}

Real height_difference_bound(const Rational& c, mpfr_prec_t prec) {
  Real archimedean_gap = max(max(log43(prec), interior_bound(c, prec)), log(escape_radius(c, prec)));
  Real finite(prec);
  if (c.get_den() != 1) {
    finite = log(Integer(c.get_den()), prec);
    mpfr_div_2ui(finite.get(), finite.get(), 1, MPFR_RNDU);
  }
  return archimedean_gap + finite;
}

AzResult az_estimate(const Rational& c, const Rational& alpha, unsigned N, const AzOptions& options) {
  if (N == 0) throw DomainError("az_estimate: N must be positive");
  if (!options.allow_preperiodic && orbit_cycles(c, alpha, 64, 4096)) {
    throw DomainError("az_estimate: alpha is preperiodic for x^2 + c");
  }
  const mpfr_prec_t prec = options.roots.precision;
  AzResult result{{}, {Real(prec), Real(prec), Method::RootFinder}};
  for (unsigned n = 1; n <= N; ++n) {
    const Integer lead = preimage_polynomial(c, alpha, n).leading();
    const RootReport report = iterated_roots(c, alpha, n, lead, options.roots);
    HeightEstimate a{report.log_mahler, report.log_mahler_error, Method::RootFinder};
    mpfr_div_2ui(a.value.get(), a.value.get(), n, MPFR_RNDN);
    mpfr_div_2ui(a.error.get(), a.error.get(), n, MPFR_RNDU);
    // M(P) >= 1 for a nonzero integer polynomial.
    if (mpfr_sgn(a.value.get()) < 0) mpfr_set_zero(a.value.get(), 1);
    result.sequence.push_back(std::move(a));
  }
  result.estimate = result.sequence.back();
  return result;
}

AzDecay az_decay(const std::vector<HeightEstimate>& sequence, unsigned from) {
  if (from == 0) throw DomainError("az_decay: levels are 1-based");
  AzDecay out;
  out.first_level = from;
  std::vector<double> xs, ys;
  for (std::size_t n = from; n < sequence.size(); ++n) {
    const double diff = std::abs((sequence[n] .value - sequence[n - 1].value).to_double());
    out.constant = std::max(out.constant, diff * std::ldexp(1.0, static_cast<int>(n)));
    if (diff > 0.0) {
      xs.push_back(static_cast<double>(n));
      ys.push_back(std::log(diff));
    }
  }
  if (sequence.size() < from + 2) throw DomainError("az_decay: need at least two differences");
  if (xs.size() < 2) {
    out.factor = std::numeric_limits<double>::infinity();
    return out;
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  out.factor = std::exp(-sxy / sxx);
  return out;
}

BoundsReport backward_bounds(const Rational& c, const Rational& alpha, mpfr_prec_t prec) {
  // rho is the positive root of t^2 = t + |c|.
  Real rho = sqrt(Real(1 + 4 * abs(c), prec)) + Real(1.0, prec);
  mpfr_div_2ui(rho.get(), rho.get(), 1, MPFR_RNDU);
  return BoundsReport{max(Real(abs(alpha), prec), rho), lcm(Integer(c.get_den()), Integer(alpha.get_den()))};
}

std::optional<IntPolynomial> scaled_preimage_polynomial(const Rational& c, const Rational& alpha, unsigned n,
                                                        const Integer& D) {
  if (n == 0 || D <= 0) throw DomainError("scaled_preimage_polynomial: need n >= 1 and D >= 1");
  // Substituting x = y / D: each step maps P(y) = D^k f^j(y / D) to D^(2k) f^(j+1)(y / D).
  dynamo::RatPolynomial g = dynamo::RatPolynomial::x();
  for (unsigned k = 0; k < n; ++k) g = g * g + dynamo::RatPolynomial::constant(c);
  g = g - dynamo::RatPolynomial::constant(alpha);
  const dynamo::RatPolynomial inner = dynamo::RatPolynomial::monomial(Rational(1, 1) / Rational(D), 1);
  Integer scale;
  mpz_pow_ui(scale.get_mpz_t(), D.get_mpz_t(), 1UL << n);
  const dynamo::RatPolynomial q = g.compose(inner) * Rational(scale);
  std::vector<Integer> coefficients;
  for (const auto& a : q.coefficients()) {
    if (a.get_den() != 1) return std::nullopt;
    coefficients.push_back(a.get_num());
  }
  if (coefficients.back() != 1) return std::nullopt;
  return IntPolynomial(std::move(coefficients));
}

std::vector<unsigned long> cyclotomic_scan(const IntPolynomial& p) {
  if (p.degree() < 1) throw DomainError("cyclotomic_scan: degree must be at least 1");
  const unsigned long deg = static_cast<unsigned long>(p.degree());
  // phi(m) >= sqrt(m / 2), so phi(m) <= deg forces m <= 2 deg^2.
  const unsigned long limit = 2 * deg * deg;
  std::vector<unsigned long> phi(limit + 1);
  for (unsigned long m = 0; m <= limit; ++m) phi[m] = m;
  for (unsigned long q = 2; q <= limit; ++q) {
    if (phi[q] != q) continue;
    for (unsigned long m = q; m <= limit; m += q) phi[m] -= phi[m] / q;
  }
  const Integer p2 = p(Integer(2));
  std::vector<unsigned long> out;
  for (unsigned long m = 1; m <= limit; ++m) {
    if (phi[m] > deg) continue;
    // Phi_m | P forces Phi_m(2) | P(2).
    if (!mpz_divisible_p(p2.get_mpz_t(), cyclotomic_at_two(m).get_mpz_t())) continue;
    if (p.divide_exact(cyclotomic(m))) out.push_back(m);
  }
  return out;
}

}  // namespace arborab::heights

#include <doctest.h>

#include <cmath>
#include <random>

#include "arborab/dynamo/dynamics.hpp"
#include "arborab/heights/heights.hpp"

using namespace arborab;
using namespace arborab::heights;

namespace {

double d(const Real& x) { return x.to_double(); }

IntPolynomial poly(std::initializer_list<long> low_to_high) {
  std::vector<Integer> c;
  for (long a : low_to_high) c.emplace_back(a);
  return IntPolynomial(std::move(c));
}

// All preimages of alpha under x^2 + c down to level n, by complex square
// roots at high precision, and the log Mahler measure they imply.
Real backward_tree_log_mahler(const Rational& c, const Rational& alpha, unsigned n, const Integer& lead,
                              mpfr_prec_t prec) {
  struct Z {
    Real re, im;
  };
  std::vector<Z> level{{Real(alpha, prec), Real(prec)}};
  const Real cr(c, prec);
  for (unsigned k = 0; k < n; ++k) {
    std::vector<Z> next;
    for (const auto& z : level) {
      const Real a = z.re - cr;
      const Real& b = z.im;
      Real m(prec);
      mpfr_hypot(m.get(), a.get(), b.get(), MPFR_RNDN);
      Real half(0.5, prec);
      Real x = sqrt((m + a) * half);
      Real y = sqrt((m - a) * half);
      if (mpfr_sgn(b.get()) < 0) y = -y;
      next.push_back({x, y});
      next.push_back({-x, -y});
    }
    level = std::move(next);
  }
  Real total = log(lead, prec);
  const Real one(1.0, prec);
  for (const auto& z : level) {
    Real m(prec);
    mpfr_hypot(m.get(), z.re.get(), z.im.get(), MPFR_RNDN);
    if (m > one) total += log(m);
  }
  return total;
}

}  // namespace

TEST_CASE("integer polynomials are stored primitive with positive lead") {
  const auto p = poly({4, 0, -6});
  CHECK(p.coefficients() == std::vector<Integer>{-2, 0, 3});
  CHECK(p.to_string() == "3x^2 - 2");
  CHECK(poly({-1, 0, 0, 0, 1}).divide_exact(poly({-1, 1})) == poly({1, 1, 1, 1}));
  CHECK_FALSE(poly({1, 0, 1}).divide_exact(poly({-1, 1})).has_value());
  CHECK(cyclotomic(12) == poly({1, 0, -1, 0, 1}));
  CHECK(cyclotomic(1) == poly({-1, 1}));
  CHECK(cyclotomic(105).coefficient(7) == -2);
  for (unsigned long m = 1; m <= 40; ++m) CHECK(cyclotomic(m).degree() == static_cast<long>(euler_phi(m)));
}

TEST_CASE("Weil heights") {
  CHECK(d(weil_height(Rational(2, 3)).value) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
  CHECK(d(weil_height(Rational(5)).value) == doctest::Approx(std::log(5.0)).epsilon(1e-15));
  CHECK(d(weil_height(Rational(-1)).value) == 0.0);
  CHECK(d(weil_height(Rational(0)).value) == 0.0);
}

TEST_CASE("preimage polynomials") {
  CHECK(preimage_polynomial(-1, Rational(-1, 2), 1) == poly({-1, 0, 2}));
  CHECK(preimage_polynomial(-1, Rational(-1, 2), 2) == poly({1, 0, -4, 0, 2}));
  for (unsigned n = 1; n <= 5; ++n) {
    std::vector<Integer> c((std::size_t{1} << n) + 1);
    c.front() = -1;
    c.back() = 1;
    CHECK(preimage_polynomial(0, 1, n) == IntPolynomial(c));
  }
  // Agrees with the rational composite.
  const auto f = dynamo::RatPolynomial{Rational(1, 3), 0, 1};
  const auto direct = dynamo::iterate(f, 3) - dynamo::RatPolynomial::constant(Rational(2, 5));
  CHECK(preimage_polynomial(Rational(1, 3), Rational(2, 5), 3) == IntPolynomial::from_rational(direct));
}

TEST_CASE("roots, Mahler measure and house") {
  const auto a = roots_mahler_house(poly({-2, 0, 1}));
  CHECK(d(a.mahler) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(d(a.house) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  const auto b = roots_mahler_house(poly({1, 0, 0, 0, 1}));
  CHECK(std::abs(d(b.mahler) - 1.0) < 1e-30);
  CHECK(std::abs(d(b.house) - 1.0) < 1e-30);
  const auto c = roots_mahler_house(poly({-1, 0, 2}));
  CHECK(d(c.mahler) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(d(c.house) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(d(a.log_mahler_error) < 1e-60);
  CHECK_THROWS_AS(roots_mahler_house(poly({3})), DomainError);
  CHECK_THROWS_AS(roots_mahler_house(poly({1, -2, 1})), NonConvergence);
}

TEST_CASE("certified radii contain the high-precision roots") {
  const auto p = poly({3, -1, 4, 1, -5, 9, 2});
  const auto low = roots_mahler_house(p);
  RootOptions high_options;
  high_options.precision = 1024;
  const auto high = roots_mahler_house(p, high_options);
  REQUIRE(low.roots.size() == 6);
  for (const auto& r : low.roots) {
    std::size_t inside = 0;
    for (const auto& s : high.roots) {
      Real dx = s.re - r.re;
      Real dy = s.im - r.im;
      Real dist(1024);
      mpfr_hypot(dist.get(), dx.get(), dy.get(), MPFR_RNDN);
      if (dist <= r.radius) ++inside;
    }
    CHECK(inside == 1);
  }
}

TEST_CASE("Mahler measure is multiplicative") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> coeff(-5, 5);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto random_poly = [&] {
      std::vector<Integer> c(2 + rng() % 4);
      for (auto& a : c) a = coeff(rng);
      c.back() = 1 + rng() % 3;
      return IntPolynomial(std::move(c));
    };
    const auto P = random_poly();
    const auto Q = random_poly();
    try {
      const auto mp = roots_mahler_house(P);
      const auto mq = roots_mahler_house(Q);
      const auto mpq = roots_mahler_house(P * Q);
      const Real diff = abs(mpq.log_mahler - (mp.log_mahler + mq.log_mahler));
      CHECK(diff <= mpq.log_mahler_error + mp.log_mahler_error + mq.log_mahler_error);
      ++checked;
    } catch (const NonConvergence&) {
      // A shared root makes P Q non-squarefree.
    }
  }
  CHECK(checked >= 15);
}

TEST_CASE("cyclotomic polynomials have Mahler measure 1 and house 1") {
  for (unsigned long m = 1; m <= 20; ++m) {
    CAPTURE(m);
    const auto r = roots_mahler_house(cyclotomic(m));
    CHECK(std::abs(d(r.mahler) - 1.0) < 1e-10);
    CHECK(std::abs(d(r.house) - 1.0) < 1e-10);
  }
}

TEST_CASE("average root height scales like h(alpha) / 2^n") {
  for (unsigned n = 1; n <= 6; ++n) {
    std::vector<Integer> c((std::size_t{1} << n) + 1);
    c.front() = -2;
    c.back() = 1;
    const auto e = average_root_height(IntPolynomial(c));
    CHECK(std::abs(d(e.value) - std::log(2.0) / std::ldexp(1.0, static_cast<int>(n))) < 1e-12);
  }
  CHECK(std::abs(d(average_root_height(preimage_polynomial(0, 1, 4)).value)) < 1e-30);
}

TEST_CASE("iterated roots agree with the backward tree and with Horner roots") {
  const std::pair<Rational, Rational> pairs[] = {{-1, 3}, {Rational(1, 3), Rational(2, 5)}, {-1, Rational(-1, 2)}};
  for (const auto& [c, alpha] : pairs) {
    for (unsigned n = 1; n <= 5; ++n) {
      CAPTURE(n);
      const auto p = preimage_polynomial(c, alpha, n);
      const auto iter = iterated_roots(c, alpha, n, p.leading());
      const Real oracle = backward_tree_log_mahler(c, alpha, n, p.leading(), 256);
      CHECK(d(abs(iter.log_mahler - oracle)) < 1e-40);
      if (n <= 4) {
        const auto horner = roots_mahler_house(p);
        CHECK(d(abs(horner.log_mahler - oracle)) < 1e-40);
      }
    }
  }
}

TEST_CASE("canonical heights") {
  const double eps = 1e-12;
  CHECK(std::abs(d(canonical_height(0, 2, eps).value) - std::log(2.0)) < 1e-12);
  const auto zero = canonical_height(-1, 0, eps);
  CHECK(zero.method == Method::Exact);
  CHECK(mpfr_zero_p(zero.value.get()));
  CHECK(mpfr_zero_p(zero.error.get()));
  for (const Rational g : {Rational(2), Rational(3, 2), Rational(-5)}) {
    CHECK(std::abs(d(canonical_height(0, g, eps).value - weil_height(g).value)) < 1e-9);
  }
  // Escape-tail oracle: f^8(2) is an integer past R = 2.
  Rational x = 2;
  for (int k = 0; k < 8; ++k) x = x * x - 1;
  const Real level8 = weil_height(x).value / Real(256.0, 256);
  CHECK(d(abs(canonical_height(-1, 2, eps).value - level8)) <= std::log(4.0 / 3.0) / 256 + eps);
  CHECK_THROWS_AS(canonical_height(0, 2, 0.0), DomainError);
}

TEST_CASE("canonical height functional equation") {
  std::mt19937_64 rng(3);
  const double eps = 1e-8;
  for (const Rational c : {Rational(-1), Rational(1), Rational(1, 2)}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Rational g = exactnum::make_rational(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 12) + 1);
      const auto h = canonical_height(c, g, eps);
      const auto hf = canonical_height(c, g * g + c, eps);
      CAPTURE(g);
      CHECK(d(abs(hf.value - h.value - h.value)) <= 2 * eps);
      CHECK(d(h.error) <= eps);
      CHECK(mpfr_sgn(h.value.get()) >= 0);
    }
  }
}

TEST_CASE("canonical and Weil heights differ by at most C(c)") {
  std::mt19937_64 rng(9);
  for (const Rational c : {Rational(-1), Rational(3), Rational(1, 4), Rational(-7, 9), Rational(5, 2)}) {
    const Real bound = height_difference_bound(c);
    for (int trial = 0; trial < 25; ++trial) {
      const Rational g = exactnum::make_rational(static_cast<long>(rng() % 201) - 100, static_cast<long>(rng() % 30) + 1);
      const Real gap = abs(canonical_height(c, g, 1e-10).value - weil_height(g).value);
      CAPTURE(g);
      CHECK(gap <= bound);
    }
  }
}

TEST_CASE("bad primes in the balanced state") {
  // c = 1/4, gamma = 3/2: v_2 stays -1 along the orbit, so lambda_2 vanishes.
  const auto h = canonical_height(Rational(1, 4), Rational(3, 2), 1e-10);
  const auto hf = canonical_height(Rational(1, 4), Rational(5, 2), 1e-10);
  CHECK(d(abs(hf.value - h.value - h.value)) < 1e-9);
  CHECK(mpfr_zero_p(canonical_height(Rational(1, 4), Rational(1, 2), 1e-10).value.get()));
}

TEST_CASE("AZ estimates") {
  const auto power = az_estimate(0, 2, 6);
  for (unsigned n = 1; n <= 6; ++n) {
    CHECK(std::abs(d(power.sequence[n - 1].value) - std::log(2.0) / std::ldexp(1.0, static_cast<int>(n))) < 1e-30);
  }
  CHECK_THROWS_AS(az_estimate(0, 1, 3), DomainError);
  AzOptions allow;
  allow.allow_preperiodic = true;
  for (const auto& e : az_estimate(0, 1, 4, allow).sequence) CHECK(std::abs(d(e.value)) < 1e-30);
  const auto basilica = az_estimate(-1, 3, 6);
  for (const auto& e : basilica.sequence) CHECK(mpfr_sgn(e.value.get()) > 0);
  const auto fit = az_decay(basilica.sequence, 2);
  CHECK(fit.factor > 1.5);
  CHECK(fit.constant > 0.0);
}

TEST_CASE("backward bounds") {
  const auto a = backward_bounds(-1, 3);
  CHECK(d(a.H) == 3.0);
  CHECK(a.D == 1);
  const auto b = backward_bounds(0, 1);
  CHECK(d(b.H) == 1.0);
  const auto c = backward_bounds(-1, Rational(-1, 2));
  CHECK(c.D == 2);
  for (unsigned n = 1; n <= 4; ++n) {
    const auto q = scaled_preimage_polynomial(-1, Rational(-1, 2), n, c.D);
    REQUIRE(q.has_value());
    CHECK(q->is_monic());
    CHECK_FALSE(scaled_preimage_polynomial(-1, Rational(-1, 2), n, 1).has_value());
  }
}

TEST_CASE("cyclotomic scans") {
  CHECK(cyclotomic_scan(poly({-1, 0, 0, 0, 1})) == std::vector<unsigned long>{1, 2, 4});
  for (unsigned n = 1; n <= 6; ++n) {
    std::vector<unsigned long> expected;
    for (unsigned k = 0; k <= n; ++k) expected.push_back(1UL << k);
    CHECK(cyclotomic_scan(preimage_polynomial(0, 1, n)) == expected);
    // i -> -2 -> 3 under x^2 - 1, and no other root of unity reaches 3.
    const auto found = cyclotomic_scan(preimage_polynomial(-1, 3, n));
    CHECK(found == (n == 2 ? std::vector<unsigned long>{4} : std::vector<unsigned long>{}));
  }
  CHECK(cyclotomic_scan(poly({1, 1, 1}) * poly({2, 0, 1})) == std::vector<unsigned long>{3});
}

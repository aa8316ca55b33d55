// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "arborab/dynamo/dynamics.hpp"
#include "arborab/exactnum/square_class.hpp"
#include "arborab/heights/heights.hpp"
#include "arborab/obstruct/obstruct.hpp"
#include "arborab/treeaut/tree_aut.hpp"

using namespace arborab;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& text) {
    if (!detail.empty()) detail += "; ";
    detail += text;
  }
};

std::string fmt(double x, const char* spec = "%.6g") {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, spec, x);
  return buffer;
}

double d(const heights::Real& x) { return x.to_double(); }

Outcome portrait_cycles() {
  Outcome o;
  const auto sigma = treeaut::TreeAut::parse("1,01,1010");
  const auto cycles = treeaut::cycle_notation(sigma.leaf_permutation());
  o.require(cycles == "(1 7 3 6)(2 8 4 5)", "got " + cycles);
  return o;
}

Outcome commutation() {
  Outcome o;
  const auto report = treeaut::verify_commutation_criterion(3);
  o.require(report.exhaustive, "not exhaustive");
  o.require(report.pairs_examined == 128 * 128, "examined " + std::to_string(report.pairs_examined));
  o.require(report.violations.empty(), std::to_string(report.violations.size()) + " violations");
  o.note(std::to_string(report.qualifying_pairs) + " qualifying pairs");
  return o;
}

// alpha and alpha + 1 are each 0 or +-2^k, tested on reduced fractions.
bool sieve_oracle(long num, long den) {
  auto unit_or_zero = [](long p, long q) {
    if (p == 0) return true;
    p = std::labs(p);
    return (p & (p - 1)) == 0 && (q & (q - 1)) == 0;
  };
  return unit_or_zero(num, den) && unit_or_zero(num + den, den);
}

Outcome local_sieve() {
  Outcome o;
  const std::vector<Rational> expected{0, -1, 1, -2, Rational(-1, 2)};
  const auto sieve = obstruct::local_sieve();
  o.require(sieve.candidates == expected, "candidate list differs");
  std::set<Rational> found;
  const long limit = 1L << 10;
  for (long den = 1; den <= limit; ++den) {
    for (long num = -limit; num <= limit; ++num) {
      if (std::gcd(num, den) != 1) continue;
      if (sieve_oracle(num, den)) found.insert(Rational(num, den));
    }
  }
  o.require(found == std::set<Rational>(expected.begin(), expected.end()),
            "brute force found " + std::to_string(found.size()) + " solutions");
  for (const auto& a : found) o.require(obstruct::local_condition(a), "local_condition rejects a solution");
  return o;
}

Outcome worked_example() {
  Outcome o;
  const auto cert = obstruct::decide_abelian_Q(-1, Rational(-1, 2));
  o.require(cert.verdict == obstruct::Verdict::NonAbelian, "verdict");
  const auto* w = std::get_if<obstruct::SquareClassWitness>(&cert.reason);
  o.require(w != nullptr, std::string("reason ") + obstruct::reason_name(cert.reason));
  if (w != nullptr) {
    o.require(w->dimension == 2, "dimension");
    o.require(w->classes == std::vector<Integer>{2, -2}, "witness classes");
  }
  const auto orbit = dynamo::adjusted_orbit(-1, Rational(-1, 2), 3);
  o.require(orbit == std::vector<Rational>{Rational(1, 2), Rational(1, 2), Rational(-1, 2)}, "adjusted orbit");
  std::vector<Integer> classes;
  std::vector<exactnum::SquareClass> sc;
  for (const auto& v : orbit) {
    sc.push_back(exactnum::squarefree_part(v));
    classes.push_back(sc.back().value());
  }
  o.require(classes == std::vector<Integer>{2, 2, -2}, "classes of the orbit");
  o.require(exactnum::f2_span_dimension(sc).dimension == 2, "span dimension");
  o.require(obstruct::verify_certificate(cert), "certificate does not verify");
  return o;
}

Outcome grid() {
  Outcome o;
  std::set<Rational> values;
  for (long den = 1; den <= 20; ++den) {
    for (long num = -20; num <= 20; ++num) values.insert(Rational(num, den));
  }
  std::set<std::pair<Rational, Rational>> abelian;
  std::size_t undecided = 0, unverified = 0, pairs = 0;
  for (const auto& c : values) {
    for (const auto& a : values) {
      if (dynamo::is_exceptional(c, a)) continue;
      ++pairs;
      const auto cert = obstruct::decide_abelian_Q(c, a);
      if (cert.verdict == obstruct::Verdict::Abelian) abelian.emplace(c, a);
      if (cert.verdict == obstruct::Verdict::Undecided) ++undecided;
      if (!obstruct::verify_certificate(cert)) ++unverified;
    }
  }
  std::set<std::pair<Rational, Rational>> expected{{0, 1}, {0, -1}};
  for (int b = -2; b <= 2; ++b) expected.emplace(-2, b);
  o.require(abelian == expected, std::to_string(abelian.size()) + " abelian pairs");
  o.require(undecided == 0, std::to_string(undecided) + " undecided");
  o.require(unverified == 0, std::to_string(unverified) + " certificates fail verification");
  o.note(std::to_string(values.size()) + " values, " + std::to_string(pairs) + " pairs");
  return o;
}

Outcome height_scaling() {
  Outcome o;
  double worst = 0.0;
  for (long alpha : {2L, 3L, 5L}) {
    for (unsigned n = 1; n <= 8; ++n) {
      std::vector<Integer> c((std::size_t{1} << n) + 1);
      c.front() = -alpha;
      c.back() = 1;
      const auto e = heights::average_root_height(heights::IntPolynomial(c));
      const double expected = std::log(static_cast<double>(alpha)) / std::ldexp(1.0, static_cast<int>(n));
      worst = std::max(worst, std::abs(d(e.value) - expected));
    }
  }
  o.require(worst < 1e-9, "worst deviation " + fmt(worst));
  o.note("worst deviation " + fmt(worst));
  return o;
}

Outcome canonical_properties() {
  Outcome o;
  for (const Rational g : {Rational(2), Rational(3, 2), Rational(-5)}) {
    const double gap = std::abs(d(heights::canonical_height(0, g, 1e-12).value - heights::weil_height(g).value));
    o.require(gap < 1e-9, "x^2 height of " + exactnum::to_string(g) + " off by " + fmt(gap));
  }
  const auto zero = heights::canonical_height(-1, 0, 1e-12);
  o.require(zero.method == heights::Method::Exact && mpfr_zero_p(zero.value.get()) && mpfr_zero_p(zero.error.get()),
            "h(0) for x^2 - 1 is not exactly 0");
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  const double eps = 1e-8;
  for (const Rational c : {Rational(-1), Rational(1), Rational(1, 2)}) {
    for (int k = 0; k < 20; ++k) {
      const Rational g = exactnum::make_rational(static_cast<long>(rng() % 199) - 99, static_cast<long>(rng() % 25) + 1);
      const auto h = heights::canonical_height(c, g, eps);
      const auto hf = heights::canonical_height(c, g * g + c, eps);
      worst = std::max(worst, std::abs(d(hf.value - h.value - h.value)));
    }
  }
  o.require(worst <= 2e-8, "functional equation residual " + fmt(worst));
  o.note("max residual " + fmt(worst));
  return o;
}

Outcome az() {
  Outcome o;
  std::vector<double> estimates;
  for (long alpha : {3L, 5L}) {
    const auto result = heights::az_estimate(-1, alpha, 10);
    bool positive = true;
    for (const auto& e : result.sequence) positive = positive && mpfr_sgn(e.value.get()) > 0;
    o.require(positive, "non-positive estimate for alpha = " + std::to_string(alpha));
    const auto fit = heights::az_decay(result.sequence, 4);
    o.require(fit.factor >= 1.5, "decay factor " + fmt(fit.factor) + " for alpha = " + std::to_string(alpha));
    estimates.push_back(d(result.estimate.value));
    o.note("alpha=" + std::to_string(alpha) + ": A_10=" + fmt(estimates.back(), "%.8f") + " +- " +
           fmt(d(result.estimate.error), "%.1e") + ", decay " + fmt(fit.factor, "%.3f") + ", C " +
           fmt(fit.constant, "%.3f"));
  }
  o.require(std::abs(estimates[0] - estimates[1]) < 0.02, "basepoint estimates differ by " +
                                                             fmt(std::abs(estimates[0] - estimates[1])));
  return o;
}

Outcome chebyshev_identity() {
  Outcome o;
  const dynamo::RatPolynomial inner{1, 0, 1};
  for (unsigned d = 1; d <= 10; ++d) {
    const auto t = dynamo::chebyshev(d);
    dynamo::RatPolynomial lhs;
    dynamo::RatPolynomial power = dynamo::RatPolynomial::constant(1);
    for (long k = 0; k <= t.degree(); ++k) {
      lhs = lhs + power * dynamo::RatPolynomial::monomial(t.coefficient(k), d - k);
      power = power * inner;
    }
    o.require(lhs == dynamo::RatPolynomial::monomial(1, 2 * d) + dynamo::RatPolynomial::constant(1),
              "identity fails at d = " + std::to_string(d));
  }
  return o;
}

Outcome bounds() {
  Outcome o;
  const auto report = heights::backward_bounds(-1, 3);
  o.require(d(report.H) == 3.0 && report.D == 1, "H or D for (-1, 3)");
  double worst = 0.0;
  for (unsigned n = 1; n <= 6; ++n) {
    const auto r = heights::roots_mahler_house(heights::preimage_polynomial(-1, 3, n));
    worst = std::max(worst, d(r.house - r.house_error));
    o.require(r.house - r.house_error <= report.H, "house exceeds H at n = " + std::to_string(n));
  }
  o.note("max house " + fmt(worst, "%.6f"));
  const auto half = heights::backward_bounds(-1, Rational(-1, 2));
  o.require(half.D == 2, "D for (-1, -1/2)");
  for (unsigned n = 1; n <= 5; ++n) {
    o.require(heights::scaled_preimage_polynomial(-1, Rational(-1, 2), n, half.D).has_value(),
              "D gamma not integral at n = " + std::to_string(n));
  }
  return o;
}

Outcome cyclotomic() {
  Outcome o;
  for (unsigned n = 1; n <= 6; ++n) {
    const auto p = heights::preimage_polynomial(0, 1, n);
    const auto divisors = heights::cyclotomic_scan(p);
    heights::IntPolynomial product(std::vector<Integer>{1});
    for (auto m : divisors) product = product * heights::cyclotomic(m);
    o.require(product == p, "(0, 1) level " + std::to_string(n) + " is not the product of its cyclotomic divisors");
    const auto found = heights::cyclotomic_scan(heights::preimage_polynomial(-1, 3, n));
    if (!found.empty()) {
      std::string list;
      for (auto m : found) list += (list.empty() ? "" : ",") + std::to_string(m);
      o.require(false, "(-1, 3) level " + std::to_string(n) + " divisible by Phi_m for m in {" + list + "}");
    }
  }
  return o;
}

Outcome term_bound() {
  Outcome o;
  const double at_two = static_cast<double>(obstruct::fz_term_bound(2, 2));
  o.require(std::abs(at_two + std::log(2016.0) / std::log(5.0)) < 1e-12, "bound at n = 2 is " + fmt(at_two));
  const long level = obstruct::fz_min_level(2);
  o.require(level == 16, "first level " + std::to_string(level));
  return o;
}

std::size_t brute_dimension(const std::vector<Rational>& values) {
  std::set<Integer> seen;
  for (std::size_t mask = 0; mask < (std::size_t{1} << values.size()); ++mask) {
    Rational product = 1;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (mask & (std::size_t{1} << i)) product *= values[i];
    }
    seen.insert(exactnum::squarefree_part(product).value());
  }
  std::size_t dim = 0;
  while ((std::size_t{1} << dim) < seen.size()) ++dim;
  return dim;
}

bool pcf_oracle(long c) {
  const long budget = 10 * (2 * std::labs(c) + 2) * (2 * std::labs(c) + 2);
  std::set<Integer> seen;
  Integer x = 0;
  for (long k = 0; k <= budget; ++k) {
    if (!seen.insert(x).second) return true;
    if (mpz_sizeinbase(x.get_mpz_t(), 2) > 4096) return false;
    x = x * x + c;
  }
  return false;
}

Outcome oracles() {
  Outcome o;
  std::mt19937_64 rng(99);
  const long pool[] = {-1, 2, 3, 5, 6, 7, 10, 14, 15, 21, -3, 4, 35};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Rational> values;
    std::vector<exactnum::SquareClass> classes;
    const std::size_t n = 1 + rng() % 10;
    for (std::size_t i = 0; i < n; ++i) {
      values.push_back(exactnum::make_rational(pool[rng() % std::size(pool)], pool[1 + rng() % 3]));
      classes.push_back(exactnum::squarefree_part(values.back()));
    }
    if (exactnum::f2_span_dimension(classes).dimension != brute_dimension(values)) {
      o.require(false, "span dimension disagrees with subset products");
      break;
    }
  }
  std::size_t bad = 0;
  for (std::uint64_t a = 0; a < 128; ++a) {
    const auto s = treeaut::TreeAut::from_code(3, a);
    const auto ps = s.leaf_permutation();
    for (std::uint64_t b = 0; b < 128; ++b) {
      const auto t = treeaut::TreeAut::from_code(3, b);
      const auto pt = t.leaf_permutation();
      const auto pr = treeaut::compose(s, t).leaf_permutation();
      for (std::size_t leaf = 0; leaf < 8; ++leaf) bad += pr[leaf] != ps[pt[leaf]];
    }
  }
  o.require(bad == 0, "composition disagrees with permutations");
  for (long c = -10; c <= 10; ++c) {
    o.require(dynamo::is_pcf(Rational(c)).pcf == pcf_oracle(c), "is_pcf disagrees at c = " + std::to_string(c));
  }
  return o;
}

}  // namespace

// --expect-fail k[,k...]: exit 0 when exactly these criteria fail. The FAIL
// lines are still printed.
std::set<int> parse_expected(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) != "--expect-fail") continue;
    std::stringstream list(argv[i + 1]);
    for (std::string item; std::getline(list, item, ',');) expected.insert(std::stoi(item));
  }
  return expected;
}

int main(int argc, char** argv) {
  const auto expected_failures = parse_expected(argc, argv);
  std::set<int> failed;
  struct Criterion {
    const char* name;
    double limit_seconds;
    std::function<Outcome()> check;
  };
  const Criterion criteria[] = {
      {"cycles of portrait 1,01,1010", 1, portrait_cycles},
      {"commutation criterion, depth 3 exhaustive", 5, commutation},
      {"local sieve and brute-force scan", 10, local_sieve},
      {"worked example (-1, -1/2)", 1, worked_example},
      {"classification grid, |num|, den <= 20", 120, grid},
      {"average root height scaling", 30, height_scaling},
      {"canonical height properties", 10, canonical_properties},
      {"AZ estimator, (-1, 3) and (-1, 5) to level 10", 180, az},
      {"Chebyshev identity, d <= 10", 1, chebyshev_identity},
      {"house and denominator bounds", 30, bounds},
      {"cyclotomic scans", 30, cyclotomic},
      {"term-count level bound", 1, term_bound},
      {"oracle suites", 30, oracles},
  };
  int failures = 0;
  int index = 0;
  for (const auto& criterion : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.check();
    } catch (const std::exception& e) {
      outcome.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > criterion.limit_seconds) {
      outcome.require(false, "took " + fmt(seconds, "%.2f") + " s, limit " + fmt(criterion.limit_seconds, "%.0f") + " s");
    }
    if (!outcome.ok) {
      ++failures;
      failed.insert(index);
    }
    std::printf("%s [%2d] %s (%.2f s)%s%s\n", outcome.ok ? "PASS" : "FAIL", index, criterion.name, seconds,
                outcome.detail.empty() ? "" : " : ", outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failures, index);
  if (!expected_failures.empty()) {
    std::printf("expected failures: %s\n", failed == expected_failures ? "matched" : "MISMATCH");
    return failed == expected_failures ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}

#include "arborab/obstruct/obstruct.hpp"

#include <chrono>
#include <cmath>
#include <deque>
#include <map>

namespace arborab::obstruct {

using exactnum::is_square;

namespace {

std::optional<long> exact_log2(const Rational& q) {
  if (sgn(q) <= 0) return std::nullopt;
  const auto log2_of = [](const Integer& n) -> std::optional<long> {
    if (mpz_popcount(n.get_mpz_t()) != 1) return std::nullopt;
    return static_cast<long>(mpz_scan1(n.get_mpz_t(), 0));
  };
  const auto num = log2_of(q.get_num());
  const auto den = log2_of(q.get_den());
  if (!num || !den) return std::nullopt;
  return *num - *den;
}

Rational signed_power_of_two(int sign, long k) {
  Integer p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(std::labs(k)));
  return k >= 0 ? Rational(sign * p) : Rational(Integer(sign), p);
}

std::optional<Integer> smallest_odd_prime(const Rational& q) {
  std::optional<Integer> best;
  for (const Integer* part : {&q.get_num(), &q.get_den()}) {
    for (const auto& [p, e] : exactnum::factor(*part).factors) {
      if (p != 2 && (!best || p < *best)) best = p;
    }
  }
  return best;
}

unsigned roots_of_unity_for(const QuadraticElement& w, unsigned level) {
  return (w.D == -1 && level >= 2) ? 4u : 2u;
}

bool witness_holds(const Rational& c, const Rational& alpha, const SquareClassWitness& w) {
  if (w.indices.size() != 2 || w.values.size() != 2 || w.indices[0] != 1 || w.indices[1] < 2) return false;
  const auto orbit = dynamo::adjusted_orbit(c, alpha, w.indices[1]);
  for (const auto& v : orbit) {
    if (v == 0) return false;
  }
  const Rational& first = orbit.front();
  const Rational& last = orbit.back();
  if (w.values[0] != first || w.values[1] != last) return false;
  if (is_square(first) || is_square(last) || is_square(first * last)) return false;
  if (!w.classes.empty()) {
    if (w.classes.size() != 2) return false;
    for (std::size_t i = 0; i < 2; ++i) {
      if (w.classes[i] == 0 || !is_square(w.values[i] / Rational(w.classes[i]))) return false;
    }
  }
  return true;
}

}  // namespace

bool prop_b_membership(const Rational& c, const Rational& alpha, const std::set<std::size_t>& indices) {
  if (indices.empty()) throw DomainError("prop_b_membership: index set must be nonempty");
  if (*indices.begin() == 0) throw DomainError("prop_b_membership: indices start at 1");
  const auto orbit = dynamo::adjusted_orbit(c, alpha, *indices.rbegin());
  Rational product = 1;
  for (std::size_t i : indices) {
    if (orbit[i - 1] == 0) {
      throw DegenerateError("c_{" + std::to_string(i) + ",alpha} = 0: alpha meets the critical orbit");
    }
    product *= orbit[i - 1];
  }
  return is_square(product);
}

OneDimResult one_dim_certificate(const Rational& c, const Rational& alpha, std::size_t N,
                                 const exactnum::FactorOptions& options) {
  if (N < 2) throw DomainError("one_dim_certificate: N must be at least 2");
  OneDimResult result;
  for (const auto& v : dynamo::adjusted_orbit(c, alpha, N)) {
    result.classes.push_back(exactnum::squarefree_part(v, options));
  }
  const auto span = exactnum::f2_span_dimension(result.classes);
  result.dimension = span.dimension;
  result.witness = span.witness;
  const auto& first = result.classes.front();
  result.non_abelian_witness = !first.is_zero() && !first.is_trivial() && span.dimension >= 2;
  return result;
}

bool local_condition(const Rational& alpha) { return !local_obstruction(alpha).has_value(); }

std::optional<LocalSieveWitness> local_obstruction(const Rational& alpha) {
  const Rational sides[2] = {alpha, alpha + 1};
  for (int s = 0; s < 2; ++s) {
    if (sides[s] == 0) continue;
    if (const auto p = smallest_odd_prime(sides[s])) {
      return LocalSieveWitness{*p, s == 0 ? SieveSide::Alpha : SieveSide::AlphaPlusOne,
                               exactnum::padic_valuation(sides[s], *p)};
    }
  }
  return std::nullopt;
}

SieveResult local_sieve() {
  // alpha = 0 and alpha = -1 pass trivially.
  SieveResult result{{Rational(0), Rational(-1)}};
  // Otherwise alpha = e 2^a and alpha + 1 = d 2^b with e, d = +-1, so
  // d 2^b - e 2^a = 1. If a < b, dividing by 2^a leaves an odd left side, so
  // a = 0 and d 2^b = 1 + e with b >= 1; symmetrically b < a forces b = 0 and
  // e 2^a = d - 1 with a >= 1; a = b needs (d - e) 2^a = 1.
  auto add = [&](const Rational& a) {
    if (std::find(result.candidates.begin(), result.candidates.end(), a) == result.candidates.end()) {
      result.candidates.push_back(a);
    }
  };
  for (int e : {1, -1}) {
    for (int d : {1, -1}) {
      if (const auto b = exact_log2(Rational(1 + e, 1) / d); b && *b >= 1) add(Rational(e));
    }
  }
  for (int e : {1, -1}) {
    for (int d : {1, -1}) {
      if (const auto a = exact_log2(Rational(d - 1, 1) / e); a && *a >= 1) add(signed_power_of_two(e, *a));
    }
  }
  for (int e : {1, -1}) {
    for (int d : {1, -1}) {
      if (d == e) continue;
      if (const auto a = exact_log2(Rational(1) / (d - e))) add(signed_power_of_two(e, *a));
    }
  }
  return result;
}

std::optional<SquareClassWitness> find_square_class_witness(const Rational& c, const Rational& alpha,
                                                            std::size_t depth_cap) {
  Rational cn = -c;
  const Rational first = cn + alpha;
  if (first == 0 || is_square(first)) return std::nullopt;
  for (std::size_t n = 2; n <= depth_cap; ++n) {
    cn = dynamo::quadratic_step(c, cn);
    Rational value = cn - alpha;
    if (value == 0) return std::nullopt;
    if (is_square(value) || is_square(value * first)) continue;
    SquareClassWitness w;
    w.indices = {1, n};
    w.values = {first, value};
    try {
      exactnum::FactorOptions quick;
      quick.budget = std::chrono::milliseconds(2000);
      w.classes = {exactnum::squarefree_part(first, quick).value(), exactnum::squarefree_part(value, quick).value()};
    } catch (const exactnum::FactorBudgetExceeded&) {
      w.classes.clear();
    }
    return w;
  }
  return std::nullopt;
}

std::optional<BackwardTransfer> find_backward_transfer(const Rational& c, const Rational& alpha,
                                                       unsigned depth_cap) {
  std::deque<std::pair<Rational, unsigned>> queue{{alpha, 0}};
  std::set<Rational> visited{alpha};
  while (!queue.empty()) {
    auto [beta, depth] = queue.front();
    queue.pop_front();
    if (depth >= depth_cap) continue;
    const auto root = exactnum::exact_sqrt(beta - c);
    if (!root) continue;
    for (const Rational& pre : {*root, Rational(-*root)}) {
      if (!visited.insert(pre).second) continue;
      if (auto w = find_square_class_witness(c, pre, depth_cap)) {
        return BackwardTransfer{pre, depth + 1, std::move(*w)};
      }
      queue.emplace_back(pre, depth + 1);
    }
  }
  return std::nullopt;
}

QuadraticElement kummer_generator(const Rational& c, const Rational& alpha) {
  if (c == 0) return {alpha, 0, 1};
  if (c != -2) throw DomainError("kummer_generator: c must be 0 or -2");
  const Rational disc = alpha * alpha - 4;
  if (const auto r = exactnum::exact_sqrt(disc)) return {(alpha + *r) / 2, 0, 1};
  const Integer D = exactnum::squarefree_part(disc).value();
  const auto t = exactnum::exact_sqrt(disc / Rational(D));
  return {alpha / 2, *t / 2, D};
}

std::optional<KummerWitness> find_kummer_witness(const Rational& c, const Rational& alpha, unsigned depth_cap) {
  const QuadraticElement w = kummer_generator(c, alpha);
  if (w.a == 0 && w.b == 0) return std::nullopt;
  for (unsigned level = 1; level <= depth_cap; ++level) {
    const unsigned roots = roots_of_unity_for(w, level);
    if (!is_two_power_power(w.pow(roots), level)) {
      return KummerWitness{c == 0 ? KummerMap::Power : KummerMap::Chebyshev, w, roots, level};
    }
  }
  return std::nullopt;
}

bool kummer_obstructs(const KummerWitness& witness) {
  if (witness.level == 0 || witness.roots_of_unity != roots_of_unity_for(witness.w, witness.level)) return false;
  return !is_two_power_power(witness.w.pow(witness.roots_of_unity), witness.level);
}

AbelianityCertificate decide_abelian_Q(const Rational& c, const Rational& alpha, const DecideOptions& options) {
  if (dynamo::is_exceptional(c, alpha)) throw DomainError("decide_abelian_Q: exceptional pair (0, 0)");
  AbelianityCertificate cert;
  cert.parameters = {c, alpha};
  cert.depth_cap = options.depth_cap;
  const unsigned cap = options.depth_cap;
  auto conclude = [&](Verdict v, Reason r) {
    cert.verdict = v;
    cert.reason = std::move(r);
    return cert;
  };

  if (const auto kind = dynamo::special_pair_detect(c, alpha); kind != dynamo::SpecialKind::NotSpecial) {
    return conclude(Verdict::Abelian, SpecialPair{kind});
  }

  auto pcf = dynamo::is_pcf(c);
  if (!pcf.pcf) {
    if (auto w = find_square_class_witness(c, alpha, cap)) return conclude(Verdict::NonAbelian, std::move(*w));
    return conclude(Verdict::NonAbelian, TheoreticalPCF{std::move(pcf)});
  }

  if (c == 0 || c == -2) {
    if (auto w = find_square_class_witness(c, alpha, cap)) return conclude(Verdict::NonAbelian, std::move(*w));
    if (auto k = find_kummer_witness(c, alpha, cap)) return conclude(Verdict::NonAbelian, std::move(*k));
    return conclude(Verdict::Undecided, CapExhausted{});
  }

  // c = -1, the only remaining PCF parameter over Q.
  if (auto local = local_obstruction(alpha)) return conclude(Verdict::NonAbelian, std::move(*local));
  if (auto w = find_square_class_witness(c, alpha, cap)) return conclude(Verdict::NonAbelian, std::move(*w));
  if (auto bt = find_backward_transfer(c, alpha, cap)) return conclude(Verdict::NonAbelian, std::move(*bt));
  return conclude(Verdict::Undecided, CapExhausted{});
}

bool verify_certificate(const AbelianityCertificate& cert) {
  const auto& [c, alpha] = cert.parameters;
  if (dynamo::is_exceptional(c, alpha)) return false;
  return std::visit(
      [&](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, SpecialPair>) {
          return cert.verdict == Verdict::Abelian && r.kind != dynamo::SpecialKind::NotSpecial &&
                 dynamo::special_pair_detect(c, alpha) == r.kind;
        } else if constexpr (std::is_same_v<T, SquareClassWitness>) {
          return cert.verdict == Verdict::NonAbelian && witness_holds(c, alpha, r);
        } else if constexpr (std::is_same_v<T, LocalSieveWitness>) {
          if (cert.verdict != Verdict::NonAbelian || c != -1) return false;
          if (r.prime == 2 || !exactnum::is_prime(r.prime)) return false;
          const Rational side = r.side == SieveSide::Alpha ? alpha : alpha + 1;
          return side != 0 && r.valuation != 0 && exactnum::padic_valuation(side, r.prime) == r.valuation;
        } else if constexpr (std::is_same_v<T, BackwardTransfer>) {
          if (cert.verdict != Verdict::NonAbelian || r.depth == 0) return false;
          Rational x = r.beta;
          for (unsigned k = 0; k < r.depth; ++k) x = dynamo::quadratic_step(c, x);
          return x == alpha && witness_holds(c, r.beta, r.inner);
        } else if constexpr (std::is_same_v<T, TheoreticalPCF>) {
          return cert.verdict == Verdict::NonAbelian && !r.escape.pcf && !dynamo::is_pcf(c).pcf;
        } else if constexpr (std::is_same_v<T, KummerWitness>) {
          if (cert.verdict != Verdict::NonAbelian || (c != 0 && c != -2)) return false;
          return kummer_generator(c, alpha) == r.w && kummer_obstructs(r);
        } else {
          return cert.verdict == Verdict::Undecided;
        }
      },
      cert.reason);
}

long double fz_term_bound(long n, long d) {
  if (n < 2 || d < 2) throw DomainError("fz_term_bound: need n >= 2 and d >= 2");
  return (static_cast<long double>(n - 2) * std::log(static_cast<long double>(d)) - std::log(2016.0L)) /
         std::log(5.0L);
}

long fz_min_level(long d, long double target) {
  long n = 2;
  while (fz_term_bound(n, d) < target) ++n;
  return n;
}

}  // namespace arborab::obstruct

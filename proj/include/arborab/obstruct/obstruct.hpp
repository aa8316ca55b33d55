#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "arborab/exactnum/square_class.hpp"
#include "arborab/obstruct/certificate.hpp"

namespace arborab::obstruct {

class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Whether prod_{i in I} c_{i,alpha} is a rational square, i.e. whether the
/// arboreal image lies in ker(sum_{i in I} phi_i). Throws DegenerateError if
/// some referenced c_{i,alpha} is 0, DomainError on empty I or index 0.
bool prop_b_membership(const Rational& c, const Rational& alpha, const std::set<std::size_t>& indices);

struct OneDimResult {
  std::size_t dimension = 0;
  std::vector<std::size_t> witness;
  std::vector<exactnum::SquareClass> classes;
  /// c_{1,alpha} nonsquare and dimension >= 2.
  bool non_abelian_witness = false;
};

/// Span of the square classes of c_{1,alpha}..c_{N,alpha} (ZERO entries
/// skipped). Requires N >= 2.
OneDimResult one_dim_certificate(const Rational& c, const Rational& alpha, std::size_t N,
                                 const exactnum::FactorOptions& options = {});

/// No odd prime divides the numerator or denominator of the nonzero values
/// among alpha, alpha + 1.
bool local_condition(const Rational& alpha);
std::optional<LocalSieveWitness> local_obstruction(const Rational& alpha);

struct SieveResult {
  std::vector<Rational> candidates;
};

/// All rational alpha with alpha and alpha + 1 each zero or +-2^k.
SieveResult local_sieve();

/// Smallest-level pair {1, n} certifying dimension >= 2 with c_{1,alpha}
/// nonsquare, found with exact square tests; stops at the first zero entry.
std::optional<SquareClassWitness> find_square_class_witness(const Rational& c, const Rational& alpha,
                                                            std::size_t depth_cap);

/// Rational preimages of alpha (breadth first, depth <= cap) until one
/// carries a square-class witness.
std::optional<BackwardTransfer> find_backward_transfer(const Rational& c, const Rational& alpha,
                                                       unsigned depth_cap);

/// Requires c in {0, -2}.
std::optional<KummerWitness> find_kummer_witness(const Rational& c, const Rational& alpha, unsigned depth_cap);
bool kummer_obstructs(const KummerWitness& witness);
/// w and the field for (c, alpha), c in {0, -2}.
QuadraticElement kummer_generator(const Rational& c, const Rational& alpha);

struct DecideOptions {
  unsigned depth_cap = 16;
};

/// Decision pipeline over Q. Throws DomainError on the exceptional pair.
AbelianityCertificate decide_abelian_Q(const Rational& c, const Rational& alpha, const DecideOptions& options = {});

/// (1/log 5)((n - 2) log d - log 2016); n >= 2, d >= 2.
long double fz_term_bound(long n, long d);
/// Smallest n >= 2 with fz_term_bound(n, d) >= target.
long fz_min_level(long d, long double target = 1.0L);

}  // namespace arborab::obstruct

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arborab/exactnum/factor.hpp"
#include "arborab/heights/int_polynomial.hpp"
#include "arborab/heights/real.hpp"
#include "arborab/heights/roots.hpp"

namespace arborab::heights {

enum class Method { Exact, EscapeTail, RootFinder };
const char* to_string(Method method);

/// The true value lies in [value - error, value + error].
struct HeightEstimate {
  Real value;
  Real error;
  Method method = Method::Exact;
};

/// log max(|num|, den); 0 for 0.
HeightEstimate weil_height(const Rational& q, mpfr_prec_t prec = kDefaultPrecision);

/// Primitive integer polynomial proportional to f^n(x) - alpha, f = x^2 + c.
IntPolynomial preimage_polynomial(const Rational& c, const Rational& alpha, unsigned n);

/// log M(P) / deg P.
HeightEstimate average_root_height(const IntPolynomial& p, const RootOptions& options = {});

struct CanonicalOptions {
  mpfr_prec_t precision = kDefaultPrecision;
  /// Exact iteration stops once numerator or denominator passes this size.
  std::size_t exact_bits = 4096;
  std::size_t exact_steps = 64;
  exactnum::FactorOptions factoring{};
};

/// Canonical height of gamma for x^2 + c, as a sum of local heights:
/// exact at finite places, escape-tail bounded at infinity. Exactly 0 with
/// Method::Exact when the orbit of gamma cycles. Requires eps > 0.
HeightEstimate canonical_height(const Rational& c, const Rational& gamma, double eps,
                                const CanonicalOptions& options = {});

/// C(c) with |canonical_height(c, x) - weil_height(x)| <= C(c) for all
/// rational x.
Real height_difference_bound(const Rational& c, mpfr_prec_t prec = kDefaultPrecision);

struct AzOptions {
  RootOptions roots{};
  /// Preperiodic basepoints have all A_n = 0 in the limit but are outside
  /// the estimator's contract; they are rejected unless this is set.
  bool allow_preperiodic = false;
};

struct AzResult {
  /// A_n = log M(P_n) / 2^n for n = 1..N.
  std::vector<HeightEstimate> sequence;
  HeightEstimate estimate;
};

/// Throws DomainError for preperiodic alpha (unless allowed) or N = 0.
AzResult az_estimate(const Rational& c, const Rational& alpha, unsigned N, const AzOptions& options = {});

struct AzDecay {
  /// exp(-slope) of the least-squares line through log|A_{n+1} - A_n|.
  double factor = 0.0;
  /// Smallest C with |A_{n+1} - A_n| <= C 2^-n over the fitted range.
  double constant = 0.0;
  unsigned first_level = 0;
};

/// Fit over differences starting at level `from` (1-based); needs at least
/// two differences.
AzDecay az_decay(const std::vector<HeightEstimate>& sequence, unsigned from = 4);

struct BoundsReport {
  Real H;
  Integer D;
};

BoundsReport backward_bounds(const Rational& c, const Rational& alpha, mpfr_prec_t prec = kDefaultPrecision);

/// D^(2^n) (f^n(x / D) - alpha), whose roots are D * gamma over the
/// preimages gamma; nullopt unless it is monic with integer coefficients.
std::optional<IntPolynomial> scaled_preimage_polynomial(const Rational& c, const Rational& alpha, unsigned n,
                                                        const Integer& D);

/// All m with phi(m) <= deg P and Phi_m | P, ascending.
std::vector<unsigned long> cyclotomic_scan(const IntPolynomial& p);

}  // namespace arborab::heights

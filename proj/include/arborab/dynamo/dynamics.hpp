#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "arborab/dynamo/rat_polynomial.hpp"
#include "arborab/exactnum/rational.hpp"

namespace arborab::dynamo {

/// f = x^2 + c with basepoint alpha.
struct QuadraticPair {
  Rational c;
  Rational alpha;
  friend bool operator==(const QuadraticPair&, const QuadraticPair&) = default;
};

inline Rational quadratic_step(const Rational& c, const Rational& x) { return x * x + c; }

struct Cycle {
  std::size_t preperiod = 0;
  std::size_t period = 0;
  friend bool operator==(const Cycle&, const Cycle&) = default;
};
struct Escaped {
  std::size_t step = 0;
  friend bool operator==(const Escaped&, const Escaped&) = default;
};
struct BudgetExhausted {
  friend bool operator==(const BudgetExhausted&, const BudgetExhausted&) = default;
};
using OrbitOutcome = std::variant<Cycle, Escaped, BudgetExhausted>;

struct OrbitReport {
  std::vector<Rational> points;
  OrbitOutcome outcome;
};

/// |x| > 1 + |c| forces |f(x)| > |x| and unbounded growth.
bool beyond_escape_radius(const Rational& c, const Rational& x);

/// n-fold composition; requires deg f >= 1.
RatPolynomial iterate(const RatPolynomial& f, unsigned n);

/// Iterates x -> x^2 + c for at most `budget` steps. Stops at the first
/// repeated value (Cycle), at the first point beyond the escape radius
/// (Escaped), or when the budget runs out.
OrbitReport orbit(const Rational& c, const Rational& x0, std::size_t budget);

enum class PcfReason { CycleFound, Escaped, DenominatorGrowth };

struct PcfCertificate {
  bool pcf = false;
  PcfReason reason = PcfReason::CycleFound;
  /// Critical orbit from 0; for DenominatorGrowth, the first three points.
  OrbitReport orbit;
};

/// Decides whether 0 has a finite orbit under x^2 + c. Non-integral c is
/// never PCF (the denominator of the orbit squares each step); for integral
/// c the orbit either leaves the box |x| <= 1 + |c| or cycles inside it.
PcfCertificate is_pcf(const Rational& c);

/// [c_{1,alpha}, ..., c_{N,alpha}] with c_1 = -c, c_n = f(c_{n-1}),
/// c_{1,alpha} = c_1 + alpha and c_{n,alpha} = c_n - alpha for n >= 2.
std::vector<Rational> adjusted_orbit(const Rational& c, const Rational& alpha, std::size_t N);

/// Monic Chebyshev polynomial with T_d(x + 1/x) = x^d + x^{-d}.
RatPolynomial chebyshev(unsigned d);

/// m(x) = scale * x + shift.
struct AffineMap {
  Rational scale = 1;
  Rational shift = 0;
  Rational operator()(const Rational& x) const { return scale * x + shift; }
  RatPolynomial as_polynomial() const { return RatPolynomial({shift, scale}); }
  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

struct NormalForm {
  RatPolynomial g;
  AffineMap m;
};

/// Monic centered conjugate g = m^{-1} o f o m. Quadratics are fully
/// normalized to x^2 + c; higher degrees must already be monic and are only
/// centered. Throws DomainError on constant or linear f, or on non-monic
/// input of degree > 2.
NormalForm normal_form(const RatPolynomial& f);

enum class SpecialKind { PowerSpecial, ChebyshevSpecial, NotSpecial };

/// Only (0, 0) has a finite backward orbit for x^2 + c.
bool is_exceptional(const Rational& c, const Rational& alpha);

/// Rational special pairs: (x^2, +-1) and (x^2 - 2, {0, +-1, +-2}). Throws
/// DomainError on the exceptional pair.
SpecialKind special_pair_detect(const Rational& c, const Rational& alpha);

const char* to_string(SpecialKind kind);

}  // namespace arborab::dynamo

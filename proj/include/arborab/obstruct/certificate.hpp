#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "arborab/dynamo/dynamics.hpp"
#include "arborab/exactnum/rational.hpp"
#include "arborab/obstruct/quadratic_field.hpp"

namespace arborab::obstruct {

enum class Verdict { Abelian, NonAbelian, Undecided };

struct SpecialPair {
  dynamo::SpecialKind kind = dynamo::SpecialKind::NotSpecial;
};

/// Two adjusted-orbit entries c_{i,alpha}, c_{j,alpha} spanning a
/// 2-dimensional subspace of Q*/Q*^2 with c_{1,alpha} a nonsquare, and no
/// zero entry up to max(indices).
struct SquareClassWitness {
  std::vector<std::size_t> indices;
  std::vector<Rational> values;
  /// Squarefree representatives of `values`; empty when factoring them ran
  /// past the budget (the witness is still checkable by square tests).
  std::vector<Integer> classes;
  std::size_t dimension = 2;
};

enum class SieveSide { Alpha, AlphaPlusOne };

/// An odd prime p with v_p(alpha) != 0 or v_p(alpha + 1) != 0, for c = -1.
struct LocalSieveWitness {
  Integer prime;
  SieveSide side = SieveSide::Alpha;
  long valuation = 0;
};

/// beta with f^depth(beta) = alpha, whose own splitting fields sit inside
/// those of alpha, carrying a square-class witness.
struct BackwardTransfer {
  Rational beta;
  unsigned depth = 0;
  SquareClassWitness inner;
};

/// No finite-level witness within the cap; non-abelian because f is not PCF.
struct TheoreticalPCF {
  dynamo::PcfCertificate escape;
};

enum class KummerMap { Power, Chebyshev };

/// For c = 0 (w = alpha, field Q) or c = -2 (w + 1/w = alpha, field
/// Q(sqrt(alpha^2 - 4))): w^roots_of_unity is not a 2^level-th power in the
/// field, so the splitting field of f^level - alpha is not abelian.
struct KummerWitness {
  KummerMap map = KummerMap::Power;
  QuadraticElement w;
  unsigned roots_of_unity = 2;
  unsigned level = 0;
};

struct CapExhausted {};

using Reason = std::variant<SpecialPair, SquareClassWitness, LocalSieveWitness, BackwardTransfer,
                            TheoreticalPCF, KummerWitness, CapExhausted>;

struct AbelianityCertificate {
  Verdict verdict = Verdict::Undecided;
  Reason reason = CapExhausted{};
  dynamo::QuadraticPair parameters;
  unsigned depth_cap = 16;
};

const char* to_string(Verdict verdict);
const char* reason_name(const Reason& reason);

/// Re-derives every claim in the certificate from (c, alpha) alone.
bool verify_certificate(const AbelianityCertificate& cert);

}  // namespace arborab::obstruct

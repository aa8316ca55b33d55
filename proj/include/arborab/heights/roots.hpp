#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "arborab/heights/int_polynomial.hpp"
#include "arborab/heights/real.hpp"

namespace arborab::heights {

class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RootOptions {
  mpfr_prec_t precision = kDefaultPrecision;
  unsigned max_sweeps = 800;
  /// Perturbed restarts of the double-precision stage before falling back to
  /// multiprecision sweeps.
  unsigned restarts = 3;
  std::uint64_t seed = 0x9E3779B97F4A7C15ULL;
};

/// A root approximation; the closed disk of the given radius around it
/// contains exactly one root of the polynomial.
struct Root {
  Real re;
  Real im;
  Real radius;
};

struct RootReport {
  std::vector<Root> roots;
  /// Natural log of the Mahler measure, lead * prod max(1, |root|).
  Real log_mahler;
  Real log_mahler_error;
  Real mahler;
  Real mahler_error;
  Real house;
  Real house_error;
  /// Name of the double-precision kernel table that produced the seeds.
  const char* kernels = "";
};

/// All complex roots by Aberth iteration (double precision, then Newton
/// polishing at options.precision) with certified isolating radii. Throws
/// NonConvergence when isolation fails, e.g. for repeated roots or too low a
/// precision. Requires degree >= 1.
RootReport roots_mahler_house(const IntPolynomial& p, const RootOptions& options = {});

/// Same report for the polynomial lead * (f^n(x) - alpha), f = x^2 + c,
/// evaluated by iterating f instead of expanding the coefficients.
RootReport iterated_roots(const Rational& c, const Rational& alpha, unsigned n, const Integer& lead,
                          const RootOptions& options = {});

}  // namespace arborab::heights

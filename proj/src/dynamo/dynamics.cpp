#include "arborab/dynamo/dynamics.hpp"

#include <cstdint>
#include <map>

namespace arborab::dynamo {

bool beyond_escape_radius(const Rational& c, const Rational& x) { return abs(x) > 1 + abs(c); }

RatPolynomial iterate(const RatPolynomial& f, unsigned n) {
  if (f.degree() < 1) throw DomainError("iterate: degree must be at least 1");
  if (n == 0) throw DomainError("iterate: n must be positive");
  RatPolynomial acc = f;
  for (unsigned k = 1; k < n; ++k) acc = f.compose(acc);
  return acc;
}

OrbitReport orbit(const Rational& c, const Rational& x0, std::size_t budget) {
  OrbitReport report;
  std::map<Rational, std::size_t> seen;
  report.points.push_back(x0);
  seen.emplace(x0, 0);
  for (std::size_t k = 0;; ++k) {
    const Rational& x = report.points[k];
    if (beyond_escape_radius(c, x)) {
      report.outcome = Escaped{k};
      return report;
    }
    if (k == budget) {
      report.outcome = BudgetExhausted{};
      return report;
    }
    Rational y = quadratic_step(c, x);
    if (const auto it = seen.find(y); it != seen.end()) {
      report.outcome = Cycle{it->second, k + 1 - it->second};
      report.points.push_back(std::move(y));
      return report;
    }
    seen.emplace(y, k + 1);
    report.points.push_back(std::move(y));
  }
}

PcfCertificate is_pcf(const Rational& c) {
  PcfCertificate cert;
  if (c.get_den() != 1) {
    cert.pcf = false;
    cert.reason = PcfReason::DenominatorGrowth;
    cert.orbit = orbit(c, Rational(0), 2);
    return cert;
  }
  // The box |x| <= 1 + |c| holds 2|c| + 3 integers.
  const Integer size = abs(c.get_num());
  // Large |c| escapes within two steps, so saturating the budget is harmless.
  const std::size_t budget = size.fits_ulong_p() && size < (Integer(1) << 60) ? size.get_ui() * 2 + 4 : SIZE_MAX;
  cert.orbit = orbit(c, Rational(0), budget);
  if (std::holds_alternative<Cycle>(cert.orbit.outcome)) {
    cert.pcf = true;
    cert.reason = PcfReason::CycleFound;
  } else {
    cert.pcf = false;
    cert.reason = PcfReason::Escaped;
  }
  return cert;
}

std::vector<Rational> adjusted_orbit(const Rational& c, const Rational& alpha, std::size_t N) {
  if (N == 0) throw DomainError("adjusted_orbit: N must be positive");
  std::vector<Rational> out;
  out.reserve(N);
  Rational cn = -c;
  out.push_back(cn + alpha);
  for (std::size_t n = 2; n <= N; ++n) {
    cn = quadratic_step(c, cn);
    out.push_back(cn - alpha);
  }
  return out;
}

RatPolynomial chebyshev(unsigned d) {
  if (d == 0) throw DomainError("chebyshev: degree must be positive");
  RatPolynomial prev = RatPolynomial::constant(2);
  RatPolynomial cur = RatPolynomial::x();
  for (unsigned k = 1; k < d; ++k) {
    RatPolynomial next = RatPolynomial::x() * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

NormalForm normal_form(const RatPolynomial& f) {
  const long d = f.degree();
  if (d < 2) throw DomainError("normal_form: polynomial must have degree >= 2");
  const Rational lead = f.leading();
  Rational scale;
  if (d == 2) {
    scale = 1 / lead;
  } else if (lead == 1) {
    scale = 1;
  } else {
    throw DomainError("normal_form: non-monic input of degree > 2 is unsupported");
  }
  const Rational shift = -f.coefficient(static_cast<std::size_t>(d - 1)) / (Rational(d) * lead);
  const AffineMap m{scale, shift};
  // g = (f(m(x)) - shift) / scale
  RatPolynomial g = (f.compose(m.as_polynomial()) - RatPolynomial::constant(shift)) * (1 / scale);
  return NormalForm{std::move(g), m};
}

bool is_exceptional(const Rational& c, const Rational& alpha) { return c == 0 && alpha == 0; }

SpecialKind special_pair_detect(const Rational& c, const Rational& alpha) {
  if (is_exceptional(c, alpha)) throw DomainError("special_pair_detect: exceptional pair (0, 0)");
  if (c == 0 && abs(alpha) == 1) return SpecialKind::PowerSpecial;
  if (c == -2 && alpha.get_den() == 1 && abs(alpha) <= 2) return SpecialKind::ChebyshevSpecial;
  return SpecialKind::NotSpecial;
}

const char* to_string(SpecialKind kind) {
  switch (kind) {
    case SpecialKind::PowerSpecial: return "PowerSpecial";
    case SpecialKind::ChebyshevSpecial: return "ChebyshevSpecial";
    case SpecialKind::NotSpecial: return "NotSpecial";
  }
  return "?";
}

}  // namespace arborab::dynamo

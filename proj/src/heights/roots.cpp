#include "arborab/heights/roots.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "arborab/heights/kernels.hpp"

namespace arborab::heights {

namespace {

struct Cx {
  Real re;
  Real im;
  explicit Cx(mpfr_prec_t prec) : re(prec), im(prec) {}
  Cx(double r, double i, mpfr_prec_t prec) : re(r, prec), im(i, prec) {}
};

struct Scratch {
  Real t1, t2, t3, t4;
  explicit Scratch(mpfr_prec_t prec) : t1(prec), t2(prec), t3(prec), t4(prec) {}
};

// Output may alias either input.
void mul(Cx& out, const Cx& a, const Cx& b, Scratch& s) {
  mpfr_mul(s.t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(s.t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(s.t3.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(s.t4.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(out.re.get(), s.t1.get(), s.t2.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), s.t3.get(), s.t4.get(), MPFR_RNDN);
}

void div(Cx& out, const Cx& a, const Cx& b, Scratch& s) {
  mpfr_sqr(s.t1.get(), b.re.get(), MPFR_RNDN);
  mpfr_sqr(s.t2.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(s.t1.get(), s.t1.get(), s.t2.get(), MPFR_RNDN);
  mpfr_mul(s.t2.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(s.t3.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(s.t2.get(), s.t2.get(), s.t3.get(), MPFR_RNDN);
  mpfr_mul(s.t3.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(s.t4.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(s.t3.get(), s.t3.get(), s.t4.get(), MPFR_RNDN);
  mpfr_div(out.re.get(), s.t2.get(), s.t1.get(), MPFR_RNDN);
  mpfr_div(out.im.get(), s.t3.get(), s.t1.get(), MPFR_RNDN);
}

void modulus(Real& out, const Cx& z) { mpfr_hypot(out.get(), z.re.get(), z.im.get(), MPFR_RNDU); }

bool is_zero(const Cx& z) { return mpfr_zero_p(z.re.get()) && mpfr_zero_p(z.im.get()); }

class Evaluator {
 public:
  explicit Evaluator(mpfr_prec_t prec) : prec_(prec), scratch_(prec) {}
  virtual ~Evaluator() = default;
  virtual std::size_t degree() const = 0;
  virtual double start_radius() const = 0;
  virtual void ratio_double(const kernels::KernelTable& k, const double* re, const double* im, std::size_t n,
                            double* nre, double* nim) const = 0;
  /// Newton ratio P(z)/P'(z) and a bound on the rounding error of the
  /// computed value. False when P'(z) vanishes.
  virtual bool ratio(const Cx& z, Cx& out, Real& slack) = 0;
  mpfr_prec_t precision() const { return prec_; }

 protected:
  mpfr_prec_t prec_;
  Scratch scratch_;
};

class HornerEvaluator final : public Evaluator {
 public:
  HornerEvaluator(const IntPolynomial& p, mpfr_prec_t prec)
      : Evaluator(prec), p_(p), value_(prec), deriv_(prec), absz_(prec), bound_(prec), tmp_(prec) {
    const std::size_t d = degree();
    long top = LONG_MIN;
    std::vector<std::pair<double, long>> parts;
    for (const auto& a : p.coefficients()) {
      long e = 0;
      const double m = mpz_get_d_2exp(&e, a.get_mpz_t());
      parts.emplace_back(m, e);
      if (m != 0.0) top = std::max(top, e);
      coeffs_.emplace_back(a, prec);
      abs_coeffs_.emplace_back(abs(Rational(a)), prec);
    }
    for (const auto& [m, e] : parts) scaled_.push_back(m == 0.0 ? 0.0 : std::ldexp(m, static_cast<int>(std::max(e - top, -2000L))));
    // Geometric mean of the root moduli when the constant term is nonzero,
    // capped by the Cauchy-type bound max |a_k / a_d|^(1/(d-k)).
    const auto log_abs = [&](std::size_t k) {
      return std::log(std::abs(parts[k].first)) + parts[k].second * std::numbers::ln2;
    };
    double cap = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      if (parts[k].first != 0.0) cap = std::max(cap, (log_abs(k) - log_abs(d)) / static_cast<double>(d - k));
    }
    radius_ = parts[0].first != 0.0 ? std::min((log_abs(0) - log_abs(d)) / static_cast<double>(d), cap) : cap - 1.0;
    radius_ = std::exp(radius_);
  }

  std::size_t degree() const override { return static_cast<std::size_t>(p_.degree()); }
  double start_radius() const override { return radius_; }

  void ratio_double(const kernels::KernelTable& k, const double* re, const double* im, std::size_t n, double* nre,
                    double* nim) const override {
    k.horner_ratio(scaled_.data(), degree(), re, im, n, nre, nim);
  }

  bool ratio(const Cx& z, Cx& out, Real& slack) override {
    mpfr_set_zero(value_.re.get(), 1);
    mpfr_set_zero(value_.im.get(), 1);
    mpfr_set_zero(deriv_.re.get(), 1);
    mpfr_set_zero(deriv_.im.get(), 1);
    mpfr_set_zero(bound_.get(), 1);
    modulus(absz_, z);
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      mul(deriv_, deriv_, z, scratch_);
      mpfr_add(deriv_.re.get(), deriv_.re.get(), value_.re.get(), MPFR_RNDN);
      mpfr_add(deriv_.im.get(), deriv_.im.get(), value_.im.get(), MPFR_RNDN);
      mul(value_, value_, z, scratch_);
      mpfr_add(value_.re.get(), value_.re.get(), coeffs_[k].get(), MPFR_RNDN);
      mpfr_mul(bound_.get(), bound_.get(), absz_.get(), MPFR_RNDU);
      mpfr_add(bound_.get(), bound_.get(), abs_coeffs_[k].get(), MPFR_RNDU);
    }
    if (is_zero(deriv_)) return false;
    div(out, value_, deriv_, scratch_);
    // Horner rounding: |error in P| <= 2 (2d + 4) u sum |a_k| |z|^k.
    modulus(tmp_, deriv_);
    mpfr_div(slack.get(), bound_.get(), tmp_.get(), MPFR_RNDU);
    mpfr_mul_ui(slack.get(), slack.get(), 2 * (2 * degree() + 4), MPFR_RNDU);
    mpfr_mul_2si(slack.get(), slack.get(), -static_cast<long>(prec_), MPFR_RNDU);
    return true;
  }

 private:
  IntPolynomial p_;
  std::vector<double> scaled_;
  std::vector<Real> coeffs_;
  std::vector<Real> abs_coeffs_;
  double radius_ = 1.0;
  Cx value_, deriv_;
  Real absz_, bound_, tmp_;
};

class IterateEvaluator final : public Evaluator {
 public:
  IterateEvaluator(const Rational& c, const Rational& alpha, unsigned n, mpfr_prec_t prec)
      : Evaluator(prec), n_(n), c_(c, prec), alpha_(alpha, prec), cd_(c.get_d()), alphad_(alpha.get_d()),
        u_(prec), d_(prec), tmp_(prec), absu_(prec), err_(64), term_(64) {
    const double rho = (1.0 + std::sqrt(1.0 + 4.0 * std::abs(cd_))) / 2.0;
    radius_ = std::max(rho, std::pow(std::abs(alphad_), 1.0 / std::ldexp(1.0, static_cast<int>(std::min(n, 60u)))));
    abs_c_ = std::abs(cd_);
  }

  std::size_t degree() const override { return std::size_t{1} << n_; }
  double start_radius() const override { return radius_; }

  void ratio_double(const kernels::KernelTable& k, const double* re, const double* im, std::size_t n, double* nre,
                    double* nim) const override {
    k.iterate_ratio(cd_, alphad_, n_, re, im, n, nre, nim);
  }

  bool ratio(const Cx& z, Cx& out, Real& slack) override {
    mpfr_set(u_.re.get(), z.re.get(), MPFR_RNDN);
    mpfr_set(u_.im.get(), z.im.get(), MPFR_RNDN);
    mpfr_set_ui(d_.re.get(), 1, MPFR_RNDN);
    mpfr_set_zero(d_.im.get(), 1);
    mpfr_set_zero(err_.get(), 1);
    for (unsigned k = 0; k < n_; ++k) {
      modulus(absu_, u_);
      // e' = 2|u| e + e^2 + 4 u_round (|u|^2 + |c|)
      mpfr_sqr(term_.get(), absu_.get(), MPFR_RNDU);
      mpfr_add_d(term_.get(), term_.get(), abs_c_ * (1.0 + 1e-15), MPFR_RNDU);
      mpfr_mul_2si(term_.get(), term_.get(), 2 - static_cast<long>(prec_), MPFR_RNDU);
      mpfr_fma(tmp_.re.get(), err_.get(), err_.get(), term_.get(), MPFR_RNDU);
      mpfr_mul(term_.get(), absu_.get(), err_.get(), MPFR_RNDU);
      mpfr_mul_2ui(term_.get(), term_.get(), 1, MPFR_RNDU);
      mpfr_add(err_.get(), term_.get(), tmp_.re.get(), MPFR_RNDU);

      mul(d_, d_, u_, scratch_);
      mpfr_mul_2ui(d_.re.get(), d_.re.get(), 1, MPFR_RNDN);
      mpfr_mul_2ui(d_.im.get(), d_.im.get(), 1, MPFR_RNDN);
      mul(u_, u_, u_, scratch_);
      mpfr_add(u_.re.get(), u_.re.get(), c_.get(), MPFR_RNDN);
    }
    mpfr_sub(u_.re.get(), u_.re.get(), alpha_.get(), MPFR_RNDN);
    if (is_zero(d_)) return false;
    div(out, u_, d_, scratch_);
    modulus(absu_, u_);
    mpfr_add_d(absu_.get(), absu_.get(), std::abs(alphad_) * (1.0 + 1e-15) + 1.0, MPFR_RNDU);
    mpfr_mul_2si(absu_.get(), absu_.get(), 2 - static_cast<long>(prec_), MPFR_RNDU);
    mpfr_add(term_.get(), err_.get(), absu_.get(), MPFR_RNDU);
    modulus(absu_, d_);
    mpfr_div(slack.get(), term_.get(), absu_.get(), MPFR_RNDU);
    mpfr_mul_d(slack.get(), slack.get(), 1.01, MPFR_RNDU);
    return true;
  }

 private:
  unsigned n_;
  Real c_, alpha_;
  double cd_, alphad_, abs_c_ = 0.0;
  double radius_ = 1.0;
  Cx u_, d_, tmp_;
  Real absu_, err_, term_;
};

void circle(std::vector<double>& re, std::vector<double>& im, double radius, double phase) {
  const std::size_t n = re.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + phase;
    re[k] = radius * std::cos(t);
    im[k] = radius * std::sin(t);
  }
}

void double_aberth(const Evaluator& ev, const kernels::KernelTable& k, std::vector<double>& re,
                   std::vector<double>& im, unsigned max_sweeps, std::mt19937_64& rng) {
  const std::size_t n = re.size();
  std::vector<double> nre(n), nim(n), sre(n), sim(n);
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);
  for (unsigned sweep = 0; sweep < max_sweeps; ++sweep) {
    ev.ratio_double(k, re.data(), im.data(), n, nre.data(), nim.data());
    k.aberth_sums(re.data(), im.data(), n, sre.data(), sim.data());
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double pr = nre[i] * sre[i] - nim[i] * sim[i];
      const double pi = nre[i] * sim[i] + nim[i] * sre[i];
      const double dr = 1.0 - pr;
      const double di = -pi;
      const double inv = 1.0 / (dr * dr + di * di);
      double wr = (nre[i] * dr + nim[i] * di) * inv;
      double wi = (nim[i] * dr - nre[i] * di) * inv;
      if (!std::isfinite(wr) || !std::isfinite(wi)) {
        if (std::isfinite(nre[i]) && std::isfinite(nim[i])) {
          wr = nre[i];
          wi = nim[i];
        } else {
          const double scale = 1e-3 * (1.0 + std::hypot(re[i], im[i]));
          wr = scale * jitter(rng);
          wi = scale * jitter(rng);
        }
        worst = INFINITY;
      }
      re[i] -= wr;
      im[i] -= wi;
      worst = std::max(worst, std::hypot(wr, wi) / std::max(1.0, std::hypot(re[i], im[i])));
    }
    if (worst < 1e-14) break;
  }
}

std::optional<RootReport> polish_and_certify(Evaluator& ev, const std::vector<Cx>& seeds, const Integer& lead) {
  const mpfr_prec_t prec = ev.precision();
  const std::size_t n = seeds.size();
  Cx step(prec);
  Real slack(prec), size(prec), tol(prec), zabs(prec);
  std::vector<Root> roots;
  roots.reserve(n);
  for (const Cx& seed : seeds) {
    if (!mpfr_number_p(seed.re.get()) || !mpfr_number_p(seed.im.get())) return std::nullopt;
    Cx z = seed;
    bool converged = false;
    for (unsigned it = 0; it < 200; ++it) {
      if (!ev.ratio(z, step, slack)) return std::nullopt;
      mpfr_sub(z.re.get(), z.re.get(), step.re.get(), MPFR_RNDN);
      mpfr_sub(z.im.get(), z.im.get(), step.im.get(), MPFR_RNDN);
      modulus(size, step);
      modulus(zabs, z);
      mpfr_max(tol.get(), zabs.get(), Real(1.0, prec).get(), MPFR_RNDU);
      mpfr_mul_2si(tol.get(), tol.get(), 8 - static_cast<long>(prec), MPFR_RNDU);
      mpfr_mul_ui(zabs.get(), slack.get(), 4, MPFR_RNDU);
      mpfr_max(tol.get(), tol.get(), zabs.get(), MPFR_RNDU);
      if (size <= tol) {
        converged = true;
        break;
      }
    }
    if (!converged || !ev.ratio(z, step, slack)) return std::nullopt;
    // A disk of radius d |P/P'| around z holds a root.
    Real radius(prec);
    modulus(radius, step);
    mpfr_add(radius.get(), radius.get(), slack.get(), MPFR_RNDU);
    mpfr_mul_ui(radius.get(), radius.get(), n, MPFR_RNDU);
    mpfr_mul_d(radius.get(), radius.get(), 1.0 + 1e-9, MPFR_RNDU);
    roots.push_back(Root{std::move(z.re), std::move(z.im), std::move(radius)});
  }

  // Pairwise disjoint disks, one root each.
  std::vector<double> re(n), im(n), rad(n), mag(n);
  for (std::size_t i = 0; i < n; ++i) {
    re[i] = roots[i].re.to_double();
    im[i] = roots[i].im.to_double();
    rad[i] = mpfr_get_d(roots[i].radius.get(), MPFR_RNDU);
    if (rad[i] == 0.0 && !mpfr_zero_p(roots[i].radius.get())) rad[i] = DBL_MIN;
    mag[i] = std::hypot(re[i], im[i]);
  }
  Cx diff(prec);
  Real dist(prec), need(prec);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::hypot(re[i] - re[j], im[i] - im[j]);
      if (d - 1e-15 * (mag[i] + mag[j]) > (rad[i] + rad[j]) * (1.0 + 1e-12)) continue;
      mpfr_sub(diff.re.get(), roots[i].re.get(), roots[j].re.get(), MPFR_RNDN);
      mpfr_sub(diff.im.get(), roots[i].im.get(), roots[j].im.get(), MPFR_RNDN);
      mpfr_hypot(dist.get(), diff.re.get(), diff.im.get(), MPFR_RNDD);
      mpfr_add(need.get(), roots[i].radius.get(), roots[j].radius.get(), MPFR_RNDU);
      if (dist <= need) return std::nullopt;
    }
  }

  RootReport report;
  report.log_mahler = log(lead, prec);
  report.log_mahler_error = Real(prec);
  report.house = Real(prec);
  report.house_error = Real(prec);
  const Real one(1.0, prec);
  for (const Root& r : roots) {
    mpfr_hypot(zabs.get(), r.re.get(), r.im.get(), MPFR_RNDN);
    if (zabs > one) report.log_mahler += log(zabs);
    mpfr_add(size.get(), zabs.get(), r.radius.get(), MPFR_RNDU);
    // log max(1, .) is 1-Lipschitz.
    if (size > one) mpfr_add(report.log_mahler_error.get(), report.log_mahler_error.get(), r.radius.get(), MPFR_RNDU);
    if (zabs > report.house) report.house = zabs;
    if (r.radius > report.house_error) report.house_error = r.radius;
  }
  Real rounding = abs(report.log_mahler) + one;
  mpfr_mul_ui(rounding.get(), rounding.get(), n + 2, MPFR_RNDU);
  mpfr_mul_2si(rounding.get(), rounding.get(), 4 - static_cast<long>(prec), MPFR_RNDU);
  report.log_mahler_error += rounding;
  report.mahler = exp(report.log_mahler);
  report.mahler_error = exp(report.log_mahler + report.log_mahler_error) - report.mahler;
  report.roots = std::move(roots);
  return report;
}

std::vector<Cx> lift(const std::vector<double>& re, const std::vector<double>& im, mpfr_prec_t prec) {
  std::vector<Cx> out;
  out.reserve(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) out.emplace_back(re[i], im[i], prec);
  return out;
}

// Multiprecision Aberth sweeps for inputs the double stage cannot separate.
void multiprecision_aberth(Evaluator& ev, std::vector<Cx>& z, unsigned sweeps) {
  const mpfr_prec_t prec = ev.precision();
  const std::size_t n = z.size();
  Scratch s(prec);
  Cx ratio(prec), sum(prec), diff(prec), term(prec), w(prec);
  Real slack(prec), size(prec), tol(prec);
  const Cx one(1.0, 0.0, prec);
  std::vector<Cx> next = z;
  for (unsigned sweep = 0; sweep < sweeps; ++sweep) {
    bool done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!ev.ratio(z[i], ratio, slack)) {
        mpfr_nextabove(next[i].re.get());
        mpfr_mul_d(next[i].re.get(), next[i].re.get(), 1.0 + 1e-6, MPFR_RNDN);
        done = false;
        continue;
      }
      mpfr_set_zero(sum.re.get(), 1);
      mpfr_set_zero(sum.im.get(), 1);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        mpfr_sub(diff.re.get(), z[i].re.get(), z[j].re.get(), MPFR_RNDN);
        mpfr_sub(diff.im.get(), z[i].im.get(), z[j].im.get(), MPFR_RNDN);
        if (is_zero(diff)) continue;
        div(term, one, diff, s);
        mpfr_add(sum.re.get(), sum.re.get(), term.re.get(), MPFR_RNDN);
        mpfr_add(sum.im.get(), sum.im.get(), term.im.get(), MPFR_RNDN);
      }
      mul(term, ratio, sum, s);
      mpfr_sub(term.re.get(), one.re.get(), term.re.get(), MPFR_RNDN);
      mpfr_neg(term.im.get(), term.im.get(), MPFR_RNDN);
      div(w, ratio, term, s);
      mpfr_sub(next[i].re.get(), z[i].re.get(), w.re.get(), MPFR_RNDN);
      mpfr_sub(next[i].im.get(), z[i].im.get(), w.im.get(), MPFR_RNDN);
      modulus(size, w);
      modulus(tol, next[i]);
      mpfr_max(tol.get(), tol.get(), one.re.get(), MPFR_RNDN);
      mpfr_mul_2si(tol.get(), tol.get(), 16 - static_cast<long>(prec), MPFR_RNDN);
      if (size > tol) done = false;
    }
    std::swap(z, next);
    if (done) break;
  }
}

RootReport solve(Evaluator& ev, const Integer& lead, const RootOptions& options) {
  const std::size_t n = ev.degree();
  if (n == 0) throw DomainError("root finding needs degree >= 1");
  const auto& k = kernels::active_kernels();
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> re(n), im(n);
  circle(re, im, ev.start_radius(), 0.4);
  for (unsigned attempt = 0; attempt <= options.restarts; ++attempt) {
    double_aberth(ev, k, re, im, options.max_sweeps, rng);
    if (auto report = polish_and_certify(ev, lift(re, im, ev.precision()), lead)) {
      report->kernels = k.name;
      return std::move(*report);
    }
    if (attempt < options.restarts) {
      circle(re, im, ev.start_radius() * (0.8 + 0.4 * unit(rng)), 2.0 * std::numbers::pi * unit(rng));
    }
  }
  auto seeds = lift(re, im, ev.precision());
  multiprecision_aberth(ev, seeds, 100);
  if (auto report = polish_and_certify(ev, seeds, lead)) {
    report->kernels = k.name;
    return std::move(*report);
  }
  throw NonConvergence("root isolation failed at " + std::to_string(ev.precision()) +
                       " bits; retry with a higher precision (repeated roots never isolate)");
}

}  // namespace

RootReport roots_mahler_house(const IntPolynomial& p, const RootOptions& options) {
  if (p.degree() < 1) throw DomainError("roots_mahler_house: degree must be at least 1");
  HornerEvaluator ev(p, options.precision);
  return solve(ev, p.leading(), options);
}

RootReport iterated_roots(const Rational& c, const Rational& alpha, unsigned n, const Integer& lead,
                          const RootOptions& options) {
  if (n == 0 || n > 20) throw DomainError("iterated_roots: n must lie in [1, 20]");
  IterateEvaluator ev(c, alpha, n, options.precision);
  return solve(ev, lead, options);
}

}  // namespace arborab::heights

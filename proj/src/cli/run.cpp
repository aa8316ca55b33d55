#include "arborab/cli/run.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <ostream>
#include <sstream>

#include "arborab/cli/cache.hpp"
#include "arborab/obstruct/obstruct.hpp"
#include "arborab/treeaut/tree_aut.hpp"

namespace arborab::cli {

namespace {

using exactnum::parse_rational;
using exactnum::to_string;

struct Args {
  // Global.
  unsigned prec = 256;
  unsigned depth = 16;
  std::string cache;
  bool json_flag = true;
  // Shared by subcommands.
  std::string c, alpha, x0 = "0", x, poly;
  std::vector<std::string> portraits;
  unsigned level = 0;
  unsigned n = 0;
  std::size_t budget = 64;
  double eps = 1e-12;
  long d = 2;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0x5DEECE66DULL;
  bool allow_preperiodic = false;
  bool with_roots = false;
};

json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

std::optional<std::filesystem::path> cache_directory(const Args& args) {
  if (!args.cache.empty()) return std::filesystem::path(args.cache);
  if (const char* env = std::getenv("ARBORAB_CACHE"); env != nullptr && *env != '\0') {
    return std::filesystem::path(env);
  }
  return std::nullopt;
}

std::vector<Integer> parse_coefficients(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) out.push_back(exactnum::parse_integer(item));
  if (out.empty()) throw ParseError("empty coefficient list");
  return out;
}

// Squarefree representative of q as a decimal string, or null if factoring
// runs past the budget.
json square_class_json(Cache& cache, const Rational& q) {
  if (q == 0) return nullptr;
  exactnum::FactorOptions options;
  options.budget = std::chrono::milliseconds(10'000);
  try {
    Integer value = sgn(q);
    for (const Integer* part : {&q.get_num(), &q.get_den()}) {
      for (const auto& [p, e] : cache.factor(abs(*part), options).factors) {
        if (e % 2 == 1) value *= p;
      }
    }
    return value.get_str();
  } catch (const exactnum::FactorBudgetExceeded&) {
    return nullptr;
  }
}

json root_estimate(const heights::Real& value, const heights::Real& error) {
  return {{"value", value.to_string(30)}, {"error", error.to_string(6)}, {"method", "RootFinder"}};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Args args;
  CLI::App app{"Abelian arboreal Galois groups and canonical heights for x^2 + c over Q", "arborab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", args.json_flag, "Emit JSON (the only output format)");
  app.add_option("--prec", args.prec, "Working precision in bits")->check(CLI::Range(32u, 65536u));
  app.add_option("--depth", args.depth, "Depth cap for the abelianity search")->check(CLI::Range(2u, 64u));
  app.add_option("--cache", args.cache, "Cache directory (default: $ARBORAB_CACHE)");

  std::function<int()> action;
  Cache* cache_ptr = nullptr;
  auto emit = [&](const json& doc) { out << doc.dump() << "\n"; };
  auto rational = [](const std::string& text, const char* name) {
    if (text.empty()) throw ParseError(std::string("missing --") + name);
    return parse_rational(text);
  };
  auto root_options = [&] {
    heights::RootOptions o;
    o.precision = args.prec;
    return o;
  };
  auto target_polynomial = [&]() -> heights::IntPolynomial {
    if (!args.poly.empty()) return heights::IntPolynomial(parse_coefficients(args.poly));
    if (args.n == 0) throw ParseError("give --poly, or --c, --alpha and --n");
    return cache_ptr->preimage_polynomial(rational(args.c, "c"), rational(args.alpha, "alpha"), args.n);
  };

  auto* orbit = app.add_subcommand("orbit", "Orbit of x0 under x^2 + c until a cycle, an escape or the budget");
  orbit->add_option("--c", args.c)->required();
  orbit->add_option("--x0", args.x0);
  orbit->add_option("--budget", args.budget);
  orbit->callback([&] {
    action = [&] {
      const Rational c = rational(args.c, "c");
      const Rational x0 = rational(args.x0, "x0");
      json doc = to_json(dynamo::orbit(c, x0, args.budget));
      doc["c"] = to_string(c);
      doc["x0"] = to_string(x0);
      emit(doc);
      return 0;
    };
  });

  auto* pcf = app.add_subcommand("pcf", "Decide whether x^2 + c is post-critically finite");
  pcf->add_option("--c", args.c)->required();
  pcf->callback([&] {
    action = [&] {
      const Rational c = rational(args.c, "c");
      json doc = to_json(dynamo::is_pcf(c));
      doc["c"] = to_string(c);
      emit(doc);
      return 0;
    };
  });

  auto* adjusted = app.add_subcommand("adjusted-orbit", "c_{1,alpha}, ..., c_{n,alpha} with square classes");
  adjusted->add_option("--c", args.c)->required();
  adjusted->add_option("--alpha", args.alpha)->required();
  adjusted->add_option("--n", args.n)->required()->check(CLI::Range(1u, 64u));
  adjusted->callback([&] {
    action = [&] {
      const Rational c = rational(args.c, "c");
      const Rational alpha = rational(args.alpha, "alpha");
      json values = json::array(), classes = json::array();
      for (const auto& v : dynamo::adjusted_orbit(c, alpha, args.n)) {
        values.push_back(to_string(v));
        classes.push_back(square_class_json(*cache_ptr, v));
      }
      emit({{"c", to_string(c)}, {"alpha", to_string(alpha)}, {"values", values}, {"classes", classes}});
      return 0;
    };
  });

  auto* abelian = app.add_subcommand("abelian", "Decide whether the arboreal Galois group is abelian");
  abelian->add_option("--c", args.c)->required();
  abelian->add_option("--alpha", args.alpha)->required();
  abelian->callback([&] {
    action = [&] {
      obstruct::DecideOptions options;
      options.depth_cap = args.depth;
      const auto cert = obstruct::decide_abelian_Q(rational(args.c, "c"), rational(args.alpha, "alpha"), options);
      json doc = to_json(cert);
      doc["verified"] = obstruct::verify_certificate(cert);
      emit(doc);
      return cert.verdict == obstruct::Verdict::Undecided ? 2 : 0;
    };
  });

  auto* sieve = app.add_subcommand("local-sieve", "All alpha with alpha and alpha + 1 in {0, +-2^k}");
  sieve->callback([&] {
    action = [&] {
      json candidates = json::array();
      for (const auto& a : obstruct::local_sieve().candidates) candidates.push_back(to_string(a));
      emit({{"candidates", candidates}});
      return 0;
    };
  });

  auto* tree = app.add_subcommand("tree", "Binary rooted tree automorphisms");
  tree->require_subcommand(1);
  auto* prop_a = tree->add_subcommand("verify-propA", "Check the commutation criterion at one depth");
  prop_a->add_option("--level", args.level, "Tree depth (default 3)");
  prop_a->add_option("--samples", args.samples);
  prop_a->add_option("--seed", args.seed);
  prop_a->callback([&] {
    action = [&] {
      treeaut::CommutationOptions options;
      options.samples = args.samples;
      options.seed = args.seed;
      const auto report = treeaut::verify_commutation_criterion(args.level == 0 ? 3 : args.level, options);
      json violations = json::array();
      for (std::size_t i = 0; i < report.violations.size() && i < 16; ++i) {
        violations.push_back({report.violations[i].first.to_string(), report.violations[i].second.to_string()});
      }
      emit({{"depth", report.depth},
            {"exhaustive", report.exhaustive},
            {"pairs_examined", report.pairs_examined},
            {"qualifying_pairs", report.qualifying_pairs},
            {"violation_count", report.violations.size()},
            {"violations", violations}});
      return 0;
    };
  });
  auto truncate_to_level = [&](treeaut::TreeAut t) {
    if (args.level == 0 || args.level == t.depth()) return t;
    if (args.level > t.depth()) {
      throw DomainError("--level " + std::to_string(args.level) + " exceeds the portrait depth " +
                        std::to_string(t.depth()));
    }
    return t.truncated(args.level);
  };
  auto* act = tree->add_subcommand("act", "Leaf permutation of a portrait, in cycle notation");
  act->add_option("--portrait", args.portraits)->required()->expected(1);
  act->add_option("--level", args.level);
  act->callback([&] {
    action = [&] {
      const auto t = truncate_to_level(treeaut::TreeAut::parse(args.portraits.at(0)));
      emit({{"cycles", treeaut::cycle_notation(t.leaf_permutation())}});
      return 0;
    };
  });
  auto* compose = tree->add_subcommand("compose", "sigma o tau (tau first) for --portrait sigma --portrait tau");
  compose->add_option("--portrait", args.portraits)->required()->expected(2);
  compose->add_option("--level", args.level);
  compose->callback([&] {
    action = [&] {
      const auto sigma = truncate_to_level(treeaut::TreeAut::parse(args.portraits.at(0)));
      const auto tau = truncate_to_level(treeaut::TreeAut::parse(args.portraits.at(1)));
      const auto rho = treeaut::compose(sigma, tau);
      emit({{"portrait", rho.to_string()}, {"cycles", treeaut::cycle_notation(rho.leaf_permutation())}});
      return 0;
    };
  });

  auto* height = app.add_subcommand("height", "Weil and canonical heights of rationals");
  height->require_subcommand(1);
  auto* weil = height->add_subcommand("weil", "log max(|num|, den)");
  weil->add_option("--x", args.x)->required();
  weil->callback([&] {
    action = [&] {
      const Rational x = rational(args.x, "x");
      json doc = to_json(heights::weil_height(x, args.prec));
      doc["x"] = to_string(x);
      emit(doc);
      return 0;
    };
  });
  auto* canonical = height->add_subcommand("canonical", "Canonical height for x^2 + c");
  canonical->add_option("--c", args.c)->required();
  canonical->add_option("--x", args.x)->required();
  canonical->add_option("--eps", args.eps)->check(CLI::PositiveNumber);
  canonical->callback([&] {
    action = [&] {
      const Rational c = rational(args.c, "c");
      const Rational x = rational(args.x, "x");
      std::ostringstream eps_text;
      eps_text << args.eps;
      const json key = {{"c", to_string(c)}, {"x", to_string(x)}, {"eps", eps_text.str()}, {"prec", args.prec}};
      json doc;
      if (auto hit = cache_ptr->load("canonical", key)) {
        doc = *hit;
      } else {
        heights::CanonicalOptions options;
        options.precision = args.prec;
        doc = to_json(heights::canonical_height(c, x, args.eps, options));
        cache_ptr->store("canonical", key, doc);
      }
      doc["c"] = to_string(c);
      doc["x"] = to_string(x);
      emit(doc);
      return 0;
    };
  });

  auto* mahler = app.add_subcommand("mahler", "Roots, Mahler measure and house of an integer polynomial");
  mahler->add_option("--poly", args.poly, "Coefficients low to high, comma separated");
  mahler->add_option("--c", args.c);
  mahler->add_option("--alpha", args.alpha);
  mahler->add_option("--n", args.n, "Use the level-n preimage polynomial of (c, alpha)");
  mahler->add_flag("--roots", args.with_roots, "Include the isolated roots");
  mahler->callback([&] {
    action = [&] {
      const auto p = target_polynomial();
      const auto report = heights::roots_mahler_house(p, root_options());
      const heights::Real deg(static_cast<double>(p.degree()), args.prec);
      json doc = {{"polynomial", to_json(p)},
                  {"degree", p.degree()},
                  {"mahler", root_estimate(report.mahler, report.mahler_error)},
                  {"log_mahler", root_estimate(report.log_mahler, report.log_mahler_error)},
                  {"house", root_estimate(report.house, report.house_error)},
                  {"average_root_height",
                   root_estimate(report.log_mahler / deg, report.log_mahler_error / deg)},
                  {"kernels", report.kernels}};
      if (args.with_roots) {
        json roots = json::array();
        for (const auto& r : report.roots) {
          roots.push_back({{"re", r.re.to_string(30)}, {"im", r.im.to_string(30)}, {"radius", r.radius.to_string(6)}});
        }
        doc["roots"] = roots;
      }
      emit(doc);
      return 0;
    };
  });

  auto* az = app.add_subcommand("az", "Arakelov-Zhang pairing of x^2 + c with x^2 by preimage averaging");
  az->add_option("--c", args.c)->required();
  az->add_option("--alpha", args.alpha)->required();
  az->add_option("--n", args.n)->required()->check(CLI::Range(1u, 14u));
  az->add_flag("--allow-preperiodic", args.allow_preperiodic);
  az->callback([&] {
    action = [&] {
      const Rational c = rational(args.c, "c");
      const Rational alpha = rational(args.alpha, "alpha");
      const json key = {{"c", to_string(c)}, {"alpha", to_string(alpha)}, {"n", args.n}, {"prec", args.prec},
                        {"allow_preperiodic", args.allow_preperiodic}};
      json sequence;
      if (auto hit = cache_ptr->load("az", key)) {
        sequence = *hit;
      } else {
        heights::AzOptions options;
        options.roots = root_options();
        options.allow_preperiodic = args.allow_preperiodic;
        sequence = json::array();
        for (const auto& e : heights::az_estimate(c, alpha, args.n, options).sequence) sequence.push_back(to_json(e));
        cache_ptr->store("az", key, sequence);
      }
      json decay = nullptr;
      if (args.n >= 6) {
        std::vector<heights::HeightEstimate> values;
        for (const auto& e : sequence) values.push_back(estimate_from_json(e, args.prec));
        const auto fit = heights::az_decay(values, 4);
        decay = {{"factor", std::isfinite(fit.factor) ? json(fit.factor) : json(nullptr)},
                 {"constant", fit.constant},
                 {"from", fit.first_level}};
      }
      emit({{"c", to_string(c)},
            {"alpha", to_string(alpha)},
            {"sequence", sequence},
            {"estimate", sequence.back()},
            {"decay", decay}});
      return 0;
    };
  });

  auto* special = app.add_subcommand("special", "Classify (c, alpha) as a special pair");
  special->add_option("--c", args.c)->required();
  special->add_option("--alpha", args.alpha)->required();
  special->callback([&] {
    action = [&] {
      const Rational c = rational(args.c, "c");
      const Rational alpha = rational(args.alpha, "alpha");
      const bool exceptional = dynamo::is_exceptional(c, alpha);
      emit({{"c", to_string(c)},
            {"alpha", to_string(alpha)},
            {"exceptional", exceptional},
            {"kind", exceptional ? json(nullptr) : json(dynamo::to_string(dynamo::special_pair_detect(c, alpha)))}});
      return 0;
    };
  });

  auto* bounds = app.add_subcommand("bounds", "House and denominator bounds for the backward orbit");
  bounds->add_option("--c", args.c)->required();
  bounds->add_option("--alpha", args.alpha)->required();
  bounds->add_option("--n", args.n, "Also check that D^(2^n) (f^n(x/D) - alpha) is monic integral");
  bounds->callback([&] {
    action = [&] {
      const Rational c = rational(args.c, "c");
      const Rational alpha = rational(args.alpha, "alpha");
      const auto report = heights::backward_bounds(c, alpha, args.prec);
      json doc = {{"c", to_string(c)}, {"alpha", to_string(alpha)}, {"H", report.H.to_string(30)},
                  {"D", report.D.get_str()}};
      if (args.n > 0) {
        const auto q = heights::scaled_preimage_polynomial(c, alpha, args.n, report.D);
        doc["integrality"] = {{"n", args.n}, {"monic_integral", q.has_value()}};
      }
      emit(doc);
      return 0;
    };
  });

  auto* cyclo = app.add_subcommand("cyclo-scan", "Cyclotomic divisors of an integer polynomial");
  cyclo->add_option("--poly", args.poly, "Coefficients low to high, comma separated");
  cyclo->add_option("--c", args.c);
  cyclo->add_option("--alpha", args.alpha);
  cyclo->add_option("--n", args.n);
  cyclo->callback([&] {
    action = [&] {
      const auto p = target_polynomial();
      emit({{"polynomial", to_json(p)}, {"divisors", heights::cyclotomic_scan(p)}});
      return 0;
    };
  });

  auto* fz = app.add_subcommand("fz-bound", "((n - 2) log d - log 2016) / log 5 and its first level >= 1");
  fz->add_option("--n", args.n);
  fz->add_option("--d", args.d)->check(CLI::Range(2L, 1'000'000L));
  fz->callback([&] {
    action = [&] {
      json doc = {{"d", args.d}, {"min_level", obstruct::fz_min_level(args.d)}};
      if (args.n > 0) {
        doc["n"] = args.n;
        doc["bound"] = static_cast<double>(obstruct::fz_term_bound(args.n, args.d));
      }
      emit(doc);
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    emit(error_json("UsageError", e.what()));
    err << e.what() << "\n";
    return 1;
  }
  if (!action) {
    emit(error_json("UsageError", "no subcommand given"));
    return 1;
  }

  Cache cache(cache_directory(args), err);
  cache_ptr = &cache;
  try {
    return action();
  } catch (const arborab::ParseError& e) {
    emit(error_json("ParseError", e.what()));
  } catch (const treeaut::TreeError& e) {
    emit(error_json("ParseError", e.what()));
  } catch (const DomainError& e) {
    emit(error_json("DomainError", e.what()));
  } catch (const heights::NonConvergence& e) {
    emit(error_json("NonConvergence", e.what()));
  } catch (const exactnum::FactorBudgetExceeded& e) {
    emit(error_json("BudgetExceeded", e.what()));
  } catch (const std::exception& e) {
    emit(error_json("Error", e.what()));
  }
  return 1;
}

}  // namespace arborab::cli

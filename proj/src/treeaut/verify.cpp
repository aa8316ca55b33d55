#include <algorithm>
#include <random>
#include <thread>

#include "arborab/treeaut/tree_aut.hpp"

namespace arborab::treeaut {

namespace {

bool independent(std::uint64_t a, std::uint64_t b) { return a != 0 && b != 0 && a != b; }

bool commute(const TreeAut& a, const TreeAut& b) { return compose(a, b) == compose(b, a); }

struct Partial {
  std::uint64_t examined = 0;
  std::uint64_t qualifying = 0;
  std::vector<std::pair<TreeAut, TreeAut>> violations;
};

template <typename Body>
void run_partitioned(unsigned workers, std::uint64_t total, Body body, std::vector<Partial>& parts) {
  parts.assign(workers, Partial{});
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = total * w / workers;
    const std::uint64_t hi = total * (w + 1) / workers;
    threads.emplace_back([&, w, lo, hi] { body(w, lo, hi, parts[w]); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace

CommutationReport verify_commutation_criterion(unsigned depth, const CommutationOptions& options) {
  if (depth < 1 || depth > TreeAut::kMaxDepth) throw TreeError("verify: depth out of range");
  unsigned workers = options.workers != 0 ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  CommutationReport report;
  report.depth = depth;
  std::vector<Partial> parts;

  if (depth <= options.exhaustive_limit && depth <= 6) {
    const std::uint64_t count = std::uint64_t{1} << ((std::uint64_t{1} << depth) - 1);
    std::vector<TreeAut> elements;
    std::vector<std::uint64_t> psis;
    elements.reserve(count);
    for (std::uint64_t code = 0; code < count; ++code) {
      elements.push_back(TreeAut::from_code(depth, code));
      psis.push_back(elements.back().psi());
    }
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));
    run_partitioned(workers, count, [&](unsigned, std::uint64_t lo, std::uint64_t hi, Partial& part) {
      for (std::uint64_t i = lo; i < hi; ++i) {
        const bool root_swap = psis[i] & 1u;
        for (std::uint64_t j = 0; j < count; ++j) {
          ++part.examined;
          if (!root_swap || !independent(psis[i], psis[j])) continue;
          ++part.qualifying;
          if (commute(elements[i], elements[j])) part.violations.emplace_back(elements[i], elements[j]);
        }
      }
    }, parts);
    report.exhaustive = true;
  } else {
    run_partitioned(workers, options.samples, [&](unsigned w, std::uint64_t lo, std::uint64_t hi, Partial& part) {
      std::mt19937_64 rng(options.seed + 0x9E3779B97F4A7C15ULL * (w + 1));
      auto random_element = [&](bool force_root) {
        TreeAut t = TreeAut::identity(depth);
        for (unsigned k = 1; k <= depth; ++k) {
          for (std::size_t j = 0; j < (std::size_t{1} << (k - 1)); ++j) t.set_label(k, j, rng() & 1u);
        }
        if (force_root) t.set_label(1, 0, true);
        return t;
      };
      for (std::uint64_t s = lo; s < hi; ++s) {
        const TreeAut sigma = random_element(true);
        const TreeAut tau = random_element(false);
        ++part.examined;
        if (!independent(sigma.psi(), tau.psi())) continue;
        ++part.qualifying;
        if (commute(sigma, tau)) part.violations.emplace_back(sigma, tau);
      }
    }, parts);
    report.exhaustive = false;
  }

  for (auto& p : parts) {
    report.pairs_examined += p.examined;
    report.qualifying_pairs += p.qualifying;
    for (auto& v : p.violations) report.violations.push_back(std::move(v));
  }
  return report;
}

}  // namespace arborab::treeaut

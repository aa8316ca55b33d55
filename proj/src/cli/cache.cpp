#include "arborab/cli/cache.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace arborab::cli {

namespace {

// FNV-1a over the entry's content, so that a damaged digit is caught instead
// of being served as a different artifact.
std::string checksum(const std::string& kind, const json& key, const json& payload) {
  const std::string text = kind + "\t" + key.dump() + "\t" + payload.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(h));
  return buffer;
}

}  // namespace

Cache::Cache(std::optional<std::filesystem::path> directory, std::ostream& warnings) : warnings_(&warnings) {
  if (!directory || directory->empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(*directory, ec);
  if (ec) {
    *warnings_ << "warning: cache directory " << *directory << " unusable (" << ec.message()
               << "); continuing uncached\n";
    return;
  }
  file_ = *directory / kFileName;
  enabled_ = true;
  std::ifstream in(file_);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      const json entry = json::parse(line);
      if (entry.at("version").get<int>() != kVersion) continue;
      const std::string kind = entry.at("kind").get<std::string>();
      if (entry.at("checksum").get<std::string>() != checksum(kind, entry.at("key"), entry.at("payload"))) {
        throw std::runtime_error("checksum mismatch");
      }
      entries_[index_key(kind, entry.at("key"))] = entry.at("payload");
    } catch (const std::exception&) {
      *warnings_ << "warning: cache line " << number << " of " << file_ << " unreadable; skipped\n";
    }
  }
}

std::string Cache::index_key(const std::string& kind, const json& key) { return kind + "\t" + key.dump(); }

std::optional<json> Cache::load(const std::string& kind, const json& key) const {
  if (!enabled_) return std::nullopt;
  const auto it = entries_.find(index_key(kind, key));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void Cache::store(const std::string& kind, const json& key, const json& payload) {
  if (!enabled_) return;
  const json entry = {{"version", kVersion},
                      {"kind", kind},
                      {"key", key},
                      {"payload", payload},
                      {"checksum", checksum(kind, key, payload)}};
  // One write per line keeps appends from interleaving.
  const std::string line = entry.dump() + "\n";
  std::ofstream out(file_, std::ios::app | std::ios::binary);
  out.write(line.data(), static_cast<std::streamsize>(line.size()));
  out.flush();
  if (!out) {
    *warnings_ << "warning: cannot append to " << file_ << "; continuing uncached\n";
    enabled_ = false;
    return;
  }
  entries_[index_key(kind, key)] = payload;
}

heights::IntPolynomial Cache::preimage_polynomial(const Rational& c, const Rational& alpha, unsigned n) {
  const json key = {{"c", to_json(c)}, {"alpha", to_json(alpha)}, {"n", n}};
  if (auto hit = load("preimage", key)) {
    try {
      return polynomial_from_json(*hit);
    } catch (const std::exception&) {
      *warnings_ << "warning: malformed cached polynomial; recomputing\n";
    }
  }
  auto p = heights::preimage_polynomial(c, alpha, n);
  store("preimage", key, to_json(p));
  return p;
}

exactnum::FactoredInteger Cache::factor(const Integer& n, const exactnum::FactorOptions& options) {
  const json key = n.get_str();
  if (auto hit = load("factor", key)) {
    try {
      auto f = factored_from_json(*hit);
      if (f.value() == n) return f;
    } catch (const std::exception&) {
    }
    *warnings_ << "warning: malformed cached factorization; recomputing\n";
  }
  auto f = exactnum::factor(n, options);
  store("factor", key, to_json(f));
  return f;
}

}  // namespace arborab::cli

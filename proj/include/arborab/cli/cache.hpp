#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "arborab/cli/json_io.hpp"

namespace arborab::cli {

/// Append-only JSON-lines store of expensive artifacts. Each line is
/// {"version", "kind", "key", "payload", "checksum"}; lines with another
/// version are ignored, and unreadable lines or checksum mismatches are
/// skipped with a warning. Any I/O failure
/// disables the cache for the rest of the run.
class Cache {
 public:
  static constexpr int kVersion = 1;
  static constexpr const char* kFileName = "arborab-cache.jsonl";

  /// Disabled when `directory` is empty.
  explicit Cache(std::optional<std::filesystem::path> directory, std::ostream& warnings);

  bool enabled() const { return enabled_; }
  std::optional<json> load(const std::string& kind, const json& key) const;
  void store(const std::string& kind, const json& key, const json& payload);

  heights::IntPolynomial preimage_polynomial(const Rational& c, const Rational& alpha, unsigned n);
  exactnum::FactoredInteger factor(const Integer& n, const exactnum::FactorOptions& options = {});

 private:
  static std::string index_key(const std::string& kind, const json& key);

  bool enabled_ = false;
  std::filesystem::path file_;
  std::ostream* warnings_;
  std::map<std::string, json> entries_;
};

}  // namespace arborab::cli

#pragma once

#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "sectorzero/nli.hpp"

namespace sectorzero {

// Hex SHA-256 over the five fields, each preceded by its byte length as a
// 64-bit little-endian integer, so field boundaries can't collide.
std::string make_cache_key(const std::string& backend_id,
                           const std::string& model_id,
                           const std::string& hypothesis_template,
                           const std::string& premise,
                           const std::string& hypothesis);

// Keyed NLI score store; concurrent lookups, exclusive stores. With a
// path, existing entries are loaded up front and every new entry is
// appended as one JSONL line {"key": ..., "logits": [c, n, e]}.
class ScoreCache {
 public:
  ScoreCache();  // memory only
  explicit ScoreCache(const std::filesystem::path& path);

  std::optional<NliLogits> lookup(const std::string& key) const;
  void store(const std::string& key, const NliLogits& logits);

  std::size_t size() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, NliLogits> entries_;
};

}  // namespace sectorzero

#include "sectorzero/cache.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <mutex>

#include <openssl/evp.h>

#include <nlohmann/json.hpp>

#include "sectorzero/errors.hpp"
#include "sectorzero/util.hpp"

namespace sectorzero {

namespace {

void update_with_field(EVP_MD_CTX* ctx, const std::string& field) {
  const std::uint64_t len = field.size();
  unsigned char prefix[8];
  for (int i = 0; i < 8; ++i) {
    prefix[i] = static_cast<unsigned char>((len >> (8 * i)) & 0xFF);
  }
  EVP_DigestUpdate(ctx, prefix, sizeof(prefix));
  EVP_DigestUpdate(ctx, field.data(), field.size());
}

}  // namespace

std::string make_cache_key(const std::string& backend_id,
                           const std::string& model_id,
                           const std::string& hypothesis_template,
                           const std::string& premise,
                           const std::string& hypothesis) {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  update_with_field(ctx, backend_id);
  update_with_field(ctx, model_id);
  update_with_field(ctx, hypothesis_template);
  update_with_field(ctx, premise);
  update_with_field(ctx, hypothesis);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int digest_len = 0;
  EVP_DigestFinal_ex(ctx, digest, &digest_len);
  EVP_MD_CTX_free(ctx);

  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(digest_len * 2);
  for (unsigned int i = 0; i < digest_len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

ScoreCache::ScoreCache() = default;

ScoreCache::ScoreCache(const std::filesystem::path& path) : path_(path) {
  if (!std::filesystem::exists(path_)) return;
  const std::string content = util::read_file(path_);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    const auto nl = content.find('\n', pos);
    const auto line_end = nl == std::string::npos ? content.size() : nl;
    const std::string_view line =
        util::trim(std::string_view(content).substr(pos, line_end - pos));
    pos = line_end + 1;
    ++line_no;
    if (line.empty()) continue;

    const auto corrupt = [&](const char* what) {
      return Error(ErrorCode::CacheCorrupt, path_.string() + ":" +
                                                std::to_string(line_no) +
                                                ": " + what);
    };
    const auto obj = nlohmann::json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      throw corrupt("not a JSON object");
    }
    const auto key_it = obj.find("key");
    const auto logits_it = obj.find("logits");
    if (key_it == obj.end() || !key_it->is_string()) {
      throw corrupt("missing string \"key\"");
    }
    if (logits_it == obj.end() || !logits_it->is_array() ||
        logits_it->size() != 3) {
      throw corrupt("\"logits\" must be an array of 3 numbers");
    }
    NliLogits logits;
    double* slots[3] = {&logits.contradiction, &logits.neutral,
                        &logits.entailment};
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& v = (*logits_it)[i];
      if (!v.is_number()) throw corrupt("non-numeric logit");
      *slots[i] = v.get<double>();
      if (!std::isfinite(*slots[i])) throw corrupt("non-finite logit");
    }
    entries_[key_it->get<std::string>()] = logits;  // later lines win
  }
}

std::optional<NliLogits> ScoreCache::lookup(const std::string& key) const {
  std::shared_lock lock(mutex_);
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ScoreCache::store(const std::string& key, const NliLogits& logits) {
  std::unique_lock lock(mutex_);
  const auto [it, inserted] = entries_.emplace(key, logits);
  if (!inserted) {
    if (it->second == logits) return;
    it->second = logits;
  }
  if (path_.empty()) return;

  nlohmann::ordered_json obj;
  obj["key"] = key;
  obj["logits"] = {logits.contradiction, logits.neutral, logits.entailment};
  std::string line = obj.dump();
  line += '\n';
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) {
    throw Error(ErrorCode::IoError,
                "cannot open cache file: " + path_.string());
  }
  out.write(line.data(), static_cast<std::streamsize>(line.size()));
  out.flush();
  if (!out) {
    throw Error(ErrorCode::IoError,
                "cache append failed: " + path_.string());
  }
}

std::size_t ScoreCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

}  // namespace sectorzero

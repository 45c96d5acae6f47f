#include "sectorzero/synthetic.hpp"

#include <cstdio>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "sectorzero/text.hpp"

namespace sectorzero {

namespace {

// None of these words may tokenize into any built-in label name.
constexpr const char* kFillers[] = {"regional",   "global",  "leading",
                                    "established", "trusted", "modern",
                                    "dependable",  "renowned"};

std::vector<std::string> distinct_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (auto& token : tokenize(text)) {
    if (seen.insert(token).second) out.push_back(token);
  }
  return out;
}

}  // namespace

Corpus generate_synthetic_corpus(const LabelSet& labels, std::size_t per_class,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Avoids std::uniform_int_distribution, whose output is not pinned down
  // by the standard; modulo keeps runs reproducible across toolchains.
  const auto draw = [&rng](std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
  };

  std::vector<std::vector<std::string>> label_tokens(labels.size());
  std::unordered_map<std::string, std::size_t> token_owners;
  for (const auto& label : labels.labels()) {
    label_tokens[label.index] = distinct_tokens(label.display_name);
    for (const auto& token : label_tokens[label.index]) ++token_owners[token];
  }
  // Tokens unique to one class; falls back to all of the class's tokens
  // when every one of them is shared.
  std::vector<std::vector<std::string>> pools(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (const auto& token : label_tokens[i]) {
      if (token_owners.at(token) == 1) pools[i].push_back(token);
    }
    if (pools[i].empty()) pools[i] = label_tokens[i];
    if (pools[i].empty()) pools[i] = {"diversified"};
  }

  Corpus corpus;
  corpus.source = "synthetic(seed=" + std::to_string(seed) +
                  ",per_class=" + std::to_string(per_class) + ")";
  std::size_t serial = 0;
  for (const auto& label : labels.labels()) {
    for (std::size_t j = 0; j < per_class; ++j) {
      ++serial;
      const std::size_t want = 2 + draw(3);
      auto pool = pools[label.index];
      const std::size_t take = std::min(want, pool.size());
      for (std::size_t i = 0; i < take; ++i) {
        std::swap(pool[i], pool[i + draw(pool.size() - i)]);
      }
      std::vector<std::string> picked(pool.begin(),
                                      pool.begin() + static_cast<std::ptrdiff_t>(take));
      while (picked.size() < 2) picked.push_back(picked.front());

      std::string description = "A firm specializing in ";
      for (std::size_t i = 0; i < picked.size(); ++i) {
        if (i > 0) description += ", ";
        description += picked[i];
      }
      description += ". Known for ";
      description += kFillers[draw(std::size(kFillers))];
      description += ' ';
      description += kFillers[draw(std::size(kFillers))];
      description += " work.";

      char num[8];
      std::snprintf(num, sizeof(num), "%04zu", serial);
      CompanyRecord rec;
      rec.id = std::string("syn-") + num;
      rec.name = std::string("SynthCo ") + num;
      rec.description = std::move(description);
      rec.gold_sector = label.gics_name;
      corpus.records.push_back(std::move(rec));
    }
  }
  return corpus;
}

}  // namespace sectorzero

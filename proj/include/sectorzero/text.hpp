#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace sectorzero {

// Lowercases and splits text into maximal runs of alphabetic characters.
// Digits, punctuation and symbols act as separators. Case mapping covers
// ASCII and Latin-1; code points above U+00FF count as alphabetic and keep
// their case. Invalid UTF-8 bytes act as separators.
std::vector<std::string> tokenize(std::string_view text);

// The same case mapping the tokenizer applies, over the whole string.
std::string lowercase(std::string_view text);

// One lowercase token per line, UTF-8; '#' starts a comment line. Entries
// are lowercased on load; an entry with internal whitespace is rejected.
std::unordered_set<std::string> load_lexicon(const std::string& path);

struct StopwordPolicy {
  std::unordered_set<std::string> base_stopwords;
  std::unordered_set<std::string> verb_lexicon;
  std::unordered_set<std::string> country_names;
  std::unordered_set<std::string> abbreviations;

  // Loads stopwords.txt, verbs.txt, countries.txt and abbreviations.txt.
  static StopwordPolicy load_dir(const std::string& dir);

  bool contains(const std::string& token) const;
};

// Drops tokens found in any of the policy sets; keeps survivor order.
std::vector<std::string> apply_stopword_policy(std::vector<std::string> tokens,
                                               const StopwordPolicy& policy);

}  // namespace sectorzero

#include "sectorzero/text.hpp"

#include <cctype>
#include <fstream>

#include "sectorzero/errors.hpp"

namespace sectorzero {

namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one code point starting at i and advances i. Truncated or
// malformed sequences consume one byte and yield kInvalid.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int extra;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    extra = 1;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    extra = 2;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    extra = 3;
    cp = b0 & 0x07;
  } else {
    ++i;
    return kInvalid;
  }
  if (i + static_cast<std::size_t>(extra) >= s.size()) {
    ++i;
    return kInvalid;
  }
  for (int k = 1; k <= extra; ++k) {
    const auto b = static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return kInvalid;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += static_cast<std::size_t>(extra) + 1;
  return cp;
}

void append_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_alpha(char32_t cp) {
  if (cp == kInvalid) return false;
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  if (cp == 0xAA || cp == 0xB5 || cp == 0xBA) return true;  // ª µ º
  if (cp >= 0xC0 && cp <= 0xFF) return cp != 0xD7 && cp != 0xF7;  // × ÷
  return cp >= 0x100;
}

char32_t lower_cp(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  return cp;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t i = 0;
  while (i < text.size()) {
    const char32_t cp = decode_utf8(text, i);
    if (is_alpha(cp)) {
      append_utf8(lower_cp(cp), current);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string lowercase(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t start = i;
    const char32_t cp = decode_utf8(text, i);
    if (cp == kInvalid) {
      out.append(text.substr(start, i - start));
    } else {
      append_utf8(lower_cp(cp), out);
    }
  }
  return out;
}

std::unordered_set<std::string> load_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open lexicon file '" + path + "'");
  }
  std::unordered_set<std::string> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t begin = 0, end = line.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(line[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(line[end - 1]))) --end;
    if (begin == end || line[begin] == '#') continue;
    const std::string entry = lowercase(std::string_view(line).substr(begin, end - begin));
    for (const char c : entry) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        throw Error(ErrorCode::BadLexiconEntry,
                    path + ":" + std::to_string(lineno) + ": entry '" + entry +
                        "' contains whitespace");
      }
    }
    entries.insert(entry);
  }
  return entries;
}

StopwordPolicy StopwordPolicy::load_dir(const std::string& dir) {
  StopwordPolicy policy;
  policy.base_stopwords = load_lexicon(dir + "/stopwords.txt");
  policy.verb_lexicon = load_lexicon(dir + "/verbs.txt");
  policy.country_names = load_lexicon(dir + "/countries.txt");
  policy.abbreviations = load_lexicon(dir + "/abbreviations.txt");
  return policy;
}

bool StopwordPolicy::contains(const std::string& token) const {
  return base_stopwords.contains(token) || verb_lexicon.contains(token) ||
         country_names.contains(token) || abbreviations.contains(token);
}

std::vector<std::string> apply_stopword_policy(std::vector<std::string> tokens,
                                               const StopwordPolicy& policy) {
  std::erase_if(tokens, [&policy](const std::string& t) { return policy.contains(t); });
  return tokens;
}

}  // namespace sectorzero

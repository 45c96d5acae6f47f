#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sectorzero {

using TokenList = std::vector<std::string>;

// Document-frequency statistics over a corpus of token lists.
// idf(t) = ln((1+N)/(1+df(t))) + 1, so idf > 0 always.
struct TfidfStats {
  std::vector<std::string> vocabulary;  // sorted, unique
  std::size_t doc_count = 0;
  std::unordered_map<std::string, std::size_t> doc_freq;
  std::unordered_map<std::string, double> idf;

  bool contains(const std::string& term) const {
    return idf.find(term) != idf.end();
  }
};

struct TermRanking {
  std::string gics_name;
  // Non-increasing score; ties in ascending term order.
  std::vector<std::pair<std::string, double>> ranked_terms;
};

// Keyed by gics_name; ordered so per-class iteration is deterministic.
using DocsByClass = std::map<std::string, std::vector<TokenList>>;

TfidfStats fit_tfidf(const std::vector<TokenList>& docs);

// score(t) = (total count of t across the class's docs) * idf(t),
// computed as a single multiply. Terms outside stats' vocabulary are
// skipped. Returns at most k terms.
TermRanking rank_class_terms(const TfidfStats& stats,
                             const DocsByClass& docs_by_class,
                             const std::string& gics_name, std::size_t k);

// One ranking per class in docs_by_class key order. May run the per-class
// work in parallel.
std::vector<TermRanking> rank_all_classes(const TfidfStats& stats,
                                          const DocsByClass& docs_by_class,
                                          std::size_t k);

// Candidate display name per class: title-cased top-min(m, len) terms
// joined by ", ". Advisory output; operators curate it into a custom
// label set.
std::map<std::string, std::string> propose_enriched_labels(
    const std::vector<TermRanking>& rankings, std::size_t m);

// Columns: gics_name, rank, term, score (shortest round-trip decimal).
std::string rankings_to_csv(const std::vector<TermRanking>& rankings);

}  // namespace sectorzero

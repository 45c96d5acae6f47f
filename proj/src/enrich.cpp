#include "sectorzero/enrich.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "csv.hpp"
#include "sectorzero/errors.hpp"
#include "sectorzero/util.hpp"

namespace sectorzero {

TfidfStats fit_tfidf(const std::vector<TokenList>& docs) {
  if (docs.empty()) {
    throw Error(ErrorCode::EmptyCorpus, "fit_tfidf: no documents");
  }
  TfidfStats stats;
  stats.doc_count = docs.size();
  std::set<std::string> vocab;
  for (const auto& doc : docs) {
    std::set<std::string> seen(doc.begin(), doc.end());
    for (const auto& term : seen) {
      ++stats.doc_freq[term];
      vocab.insert(term);
    }
  }
  stats.vocabulary.assign(vocab.begin(), vocab.end());
  const double n = static_cast<double>(stats.doc_count);
  for (const auto& term : stats.vocabulary) {
    const double df = static_cast<double>(stats.doc_freq.at(term));
    stats.idf[term] = std::log((1.0 + n) / (1.0 + df)) + 1.0;
  }
  return stats;
}

TermRanking rank_class_terms(const TfidfStats& stats,
                             const DocsByClass& docs_by_class,
                             const std::string& gics_name, std::size_t k) {
  const auto it = docs_by_class.find(gics_name);
  if (it == docs_by_class.end()) {
    throw Error(ErrorCode::UnknownLabel,
                "rank_class_terms: no documents for class \"" + gics_name +
                    "\"");
  }
  std::map<std::string, std::size_t> counts;
  for (const auto& doc : it->second) {
    for (const auto& term : doc) {
      if (stats.contains(term)) ++counts[term];
    }
  }
  TermRanking ranking;
  ranking.gics_name = gics_name;
  ranking.ranked_terms.reserve(counts.size());
  for (const auto& [term, count] : counts) {
    ranking.ranked_terms.emplace_back(
        term, static_cast<double>(count) * stats.idf.at(term));
  }
  std::stable_sort(ranking.ranked_terms.begin(), ranking.ranked_terms.end(),
                   [](const auto& a, const auto& b) {
                     if (a.second != b.second) return a.second > b.second;
                     return a.first < b.first;
                   });
  if (ranking.ranked_terms.size() > k) ranking.ranked_terms.resize(k);
  return ranking;
}

std::vector<TermRanking> rank_all_classes(const TfidfStats& stats,
                                          const DocsByClass& docs_by_class,
                                          std::size_t k) {
  std::vector<const std::string*> names;
  names.reserve(docs_by_class.size());
  for (const auto& [name, docs] : docs_by_class) names.push_back(&name);

  std::vector<TermRanking> rankings(names.size());
  std::exception_ptr failure;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(names.size());
       ++i) {
    try {
      rankings[static_cast<std::size_t>(i)] =
          rank_class_terms(stats, docs_by_class, *names[i], k);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rankings;
}

std::map<std::string, std::string> propose_enriched_labels(
    const std::vector<TermRanking>& rankings, std::size_t m) {
  std::map<std::string, std::string> proposals;
  for (const auto& ranking : rankings) {
    if (ranking.ranked_terms.empty()) {
      throw Error(ErrorCode::EmptyRanking,
                  "no ranked terms for class \"" + ranking.gics_name + "\"");
    }
    const std::size_t take = std::min(m, ranking.ranked_terms.size());
    std::string name;
    for (std::size_t i = 0; i < take; ++i) {
      if (i > 0) name += ", ";
      std::string term = ranking.ranked_terms[i].first;
      if (!term.empty() && term[0] >= 'a' && term[0] <= 'z') {
        term[0] = static_cast<char>(term[0] - 'a' + 'A');
      }
      name += term;
    }
    proposals[ranking.gics_name] = std::move(name);
  }
  return proposals;
}

std::string rankings_to_csv(const std::vector<TermRanking>& rankings) {
  std::string out = csv::join_row({"gics_name", "rank", "term", "score"});
  for (const auto& ranking : rankings) {
    for (std::size_t i = 0; i < ranking.ranked_terms.size(); ++i) {
      const auto& [term, score] = ranking.ranked_terms[i];
      out += csv::join_row({ranking.gics_name, std::to_string(i + 1), term,
                            util::format_double(score)});
    }
  }
  return out;
}

}  // namespace sectorzero

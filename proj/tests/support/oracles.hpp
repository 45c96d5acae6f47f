#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace testsupport {

// Independent recomputation of the classification report via direct
// TP/FP/FN enumeration, kept free of the library's matrix code.
struct OracleClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct OracleReport {
  std::vector<std::vector<std::size_t>> matrix;
  std::vector<OracleClassMetrics> per_class;
  double accuracy = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  double weighted_precision = 0.0;
  double weighted_recall = 0.0;
  double weighted_f1 = 0.0;
};

OracleReport oracle_report(const std::vector<std::size_t>& gold,
                           const std::vector<std::size_t>& pred,
                           std::size_t class_count);

// Independent class-term ranking: recounts document frequencies and
// per-class occurrences by direct enumeration, then applies the declared
// scoring and ordering rules.
std::vector<std::pair<std::string, double>> oracle_rank_terms(
    const std::vector<std::vector<std::string>>& all_docs,
    const std::vector<std::vector<std::string>>& class_docs, std::size_t k);

}  // namespace testsupport

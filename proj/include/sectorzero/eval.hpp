#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sectorzero/taxonomy.hpp"

namespace sectorzero {

// counts[i][j] = documents with gold label i predicted as label j,
// rows/columns in LabelSet order.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(LabelSet labels);

  const LabelSet& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }

  std::size_t at(std::size_t gold, std::size_t pred) const {
    return counts_[gold * size() + pred];
  }
  void add(std::size_t gold, std::size_t pred, std::size_t n = 1) {
    counts_[gold * size() + pred] += n;
  }

  std::size_t row_sum(std::size_t gold) const;
  std::size_t col_sum(std::size_t pred) const;
  std::size_t trace() const;
  std::size_t total() const;

 private:
  LabelSet labels_;
  std::vector<std::size_t> counts_;
};

ConfusionMatrix confusion_matrix(const std::vector<std::string>& gold,
                                 const std::vector<std::string>& pred,
                                 const LabelSet& labels);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
  // Zero-denominator cases report 0.0 and set the matching flag.
  bool precision_undefined = false;
  bool recall_undefined = false;
};

// 2pr/(p+r), or 0 when p+r = 0.
double f1_score(double precision, double recall);

// One entry per label, in LabelSet order.
std::vector<ClassMetrics> class_metrics(const ConfusionMatrix& cm);

struct Averages {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Unweighted mean over all classes, zero-support classes included.
Averages macro_average(const std::vector<ClassMetrics>& per_class);

// Support-weighted mean; requires nonzero total support.
Averages weighted_average(const std::vector<ClassMetrics>& per_class);

struct AggregateMetrics {
  double accuracy = 0.0;
  Averages macro;
  Averages weighted;
  std::size_t total_support = 0;
};

AggregateMetrics aggregate_metrics(const std::vector<ClassMetrics>& per_class,
                                   const ConfusionMatrix& cm);

struct EvaluationReport {
  std::vector<ClassMetrics> per_class;  // LabelSet order
  AggregateMetrics aggregate;
};

EvaluationReport build_report(const ConfusionMatrix& cm);

// Two decimals, half away from zero: 0.8426 -> "0.84".
std::string display_2dp(double value);

// Aligned columns, display-rounded values, label rows then
// accuracy / macro avg / weighted avg.
std::string render_report_text(const EvaluationReport& report,
                               const LabelSet& labels);

// Columns: label, precision, recall, f1, support, precision_display,
// recall_display, f1_display, flags. Raw values keep full precision.
std::string render_report_csv(const EvaluationReport& report,
                              const LabelSet& labels);

std::string render_report_json(const EvaluationReport& report,
                               const LabelSet& labels);

// Grid of 64px cells, grayscale fill scaled linearly from zero (white) to
// the max count, each cell annotated, axes labeled with display names.
// Byte output depends only on the matrix contents.
std::string render_heatmap_svg(const ConfusionMatrix& cm);

}  // namespace sectorzero

#include "sectorzero/eval.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "sectorzero/errors.hpp"
#include "sectorzero/util.hpp"

namespace sectorzero {

ConfusionMatrix::ConfusionMatrix(LabelSet labels)
    : labels_(std::move(labels)), counts_(labels_.size() * labels_.size(), 0) {}

std::size_t ConfusionMatrix::row_sum(std::size_t gold) const {
  std::size_t sum = 0;
  for (std::size_t j = 0; j < size(); ++j) sum += at(gold, j);
  return sum;
}

std::size_t ConfusionMatrix::col_sum(std::size_t pred) const {
  std::size_t sum = 0;
  for (std::size_t i = 0; i < size(); ++i) sum += at(i, pred);
  return sum;
}

std::size_t ConfusionMatrix::trace() const {
  std::size_t sum = 0;
  for (std::size_t i = 0; i < size(); ++i) sum += at(i, i);
  return sum;
}

std::size_t ConfusionMatrix::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0});
}

ConfusionMatrix confusion_matrix(const std::vector<std::string>& gold,
                                 const std::vector<std::string>& pred,
                                 const LabelSet& labels) {
  if (gold.size() != pred.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "gold has " + std::to_string(gold.size()) +
                    " entries, predictions have " +
                    std::to_string(pred.size()));
  }
  std::unordered_map<std::string_view, std::size_t> index;
  for (const auto& label : labels.labels()) {
    index.emplace(label.gics_name, label.index);
  }
  const auto lookup = [&](const std::string& name) {
    const auto it = index.find(name);
    if (it == index.end()) {
      throw Error(ErrorCode::UnknownLabel,
                  "label \"" + name + "\" not in label set");
    }
    return it->second;
  };
  ConfusionMatrix cm(labels);
  for (std::size_t d = 0; d < gold.size(); ++d) {
    cm.add(lookup(gold[d]), lookup(pred[d]));
  }
  return cm;
}

double f1_score(double precision, double recall) {
  const double denom = precision + recall;
  if (denom <= 0.0) return 0.0;
  return 2.0 * precision * recall / denom;
}

std::vector<ClassMetrics> class_metrics(const ConfusionMatrix& cm) {
  std::vector<ClassMetrics> metrics(cm.size());
  for (std::size_t i = 0; i < cm.size(); ++i) {
    auto& m = metrics[i];
    const std::size_t tp = cm.at(i, i);
    const std::size_t col = cm.col_sum(i);
    const std::size_t row = cm.row_sum(i);
    m.support = row;
    if (col == 0) {
      m.precision_undefined = true;
    } else {
      m.precision = static_cast<double>(tp) / static_cast<double>(col);
    }
    if (row == 0) {
      m.recall_undefined = true;
    } else {
      m.recall = static_cast<double>(tp) / static_cast<double>(row);
    }
    m.f1 = f1_score(m.precision, m.recall);
  }
  return metrics;
}

Averages macro_average(const std::vector<ClassMetrics>& per_class) {
  Averages avg;
  if (per_class.empty()) return avg;
  for (const auto& m : per_class) {
    avg.precision += m.precision;
    avg.recall += m.recall;
    avg.f1 += m.f1;
  }
  const double k = static_cast<double>(per_class.size());
  avg.precision /= k;
  avg.recall /= k;
  avg.f1 /= k;
  return avg;
}

Averages weighted_average(const std::vector<ClassMetrics>& per_class) {
  std::size_t total = 0;
  for (const auto& m : per_class) total += m.support;
  if (total == 0) {
    throw Error(ErrorCode::EmptyEvaluation, "no gold-labeled documents");
  }
  Averages avg;
  for (const auto& m : per_class) {
    const double w = static_cast<double>(m.support);
    avg.precision += w * m.precision;
    avg.recall += w * m.recall;
    avg.f1 += w * m.f1;
  }
  const double t = static_cast<double>(total);
  avg.precision /= t;
  avg.recall /= t;
  avg.f1 /= t;
  return avg;
}

AggregateMetrics aggregate_metrics(const std::vector<ClassMetrics>& per_class,
                                   const ConfusionMatrix& cm) {
  AggregateMetrics agg;
  for (const auto& m : per_class) agg.total_support += m.support;
  if (agg.total_support == 0) {
    throw Error(ErrorCode::EmptyEvaluation, "no gold-labeled documents");
  }
  agg.accuracy = static_cast<double>(cm.trace()) /
                 static_cast<double>(agg.total_support);
  agg.macro = macro_average(per_class);
  agg.weighted = weighted_average(per_class);
  return agg;
}

EvaluationReport build_report(const ConfusionMatrix& cm) {
  EvaluationReport report;
  report.per_class = class_metrics(cm);
  report.aggregate = aggregate_metrics(report.per_class, cm);
  return report;
}

std::string display_2dp(double value) {
  long long cents = std::llround(value * 100.0);
  const char* sign = "";
  if (cents < 0) {
    sign = "-";
    cents = -cents;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%lld.%02lld", sign, cents / 100,
                cents % 100);
  return buf;
}

namespace {

void append_right(std::string& out, std::string_view text,
                  std::size_t width) {
  if (text.size() < width) out.append(width - text.size(), ' ');
  out.append(text);
}

std::vector<std::string> flag_names(const ClassMetrics& m) {
  std::vector<std::string> flags;
  if (m.precision_undefined) flags.push_back("precision_undefined");
  if (m.recall_undefined) flags.push_back("recall_undefined");
  return flags;
}

}  // namespace

std::string render_report_text(const EvaluationReport& report,
                               const LabelSet& labels) {
  constexpr std::size_t kCol = 10;
  std::size_t name_width = 12;  // fits "weighted avg"
  for (const auto& label : labels.labels()) {
    name_width = std::max(name_width, label.display_name.size());
  }
  std::string out;
  append_right(out, "", name_width);
  append_right(out, "precision", kCol);
  append_right(out, "recall", kCol);
  append_right(out, "f1-score", kCol);
  append_right(out, "support", kCol);
  out += "\n\n";
  for (const auto& label : labels.labels()) {
    const auto& m = report.per_class[label.index];
    append_right(out, label.display_name, name_width);
    append_right(out, display_2dp(m.precision), kCol);
    append_right(out, display_2dp(m.recall), kCol);
    append_right(out, display_2dp(m.f1), kCol);
    append_right(out, std::to_string(m.support), kCol);
    out += '\n';
  }
  const auto& agg = report.aggregate;
  const std::string total = std::to_string(agg.total_support);
  out += '\n';
  append_right(out, "accuracy", name_width);
  append_right(out, "", kCol);
  append_right(out, "", kCol);
  append_right(out, display_2dp(agg.accuracy), kCol);
  append_right(out, total, kCol);
  out += '\n';
  append_right(out, "macro avg", name_width);
  append_right(out, display_2dp(agg.macro.precision), kCol);
  append_right(out, display_2dp(agg.macro.recall), kCol);
  append_right(out, display_2dp(agg.macro.f1), kCol);
  append_right(out, total, kCol);
  out += '\n';
  append_right(out, "weighted avg", name_width);
  append_right(out, display_2dp(agg.weighted.precision), kCol);
  append_right(out, display_2dp(agg.weighted.recall), kCol);
  append_right(out, display_2dp(agg.weighted.f1), kCol);
  append_right(out, total, kCol);
  out += '\n';
  return out;
}

std::string render_report_csv(const EvaluationReport& report,
                              const LabelSet& labels) {
  std::string out = csv::join_row({"label", "precision", "recall", "f1",
                                   "support", "precision_display",
                                   "recall_display", "f1_display", "flags"});
  const auto row = [&](const std::string& name, double p, double r, double f1,
                       std::size_t support, const std::vector<std::string>& flags) {
    std::string joined;
    for (std::size_t i = 0; i < flags.size(); ++i) {
      if (i > 0) joined += '|';
      joined += flags[i];
    }
    out += csv::join_row({name, util::format_double(p),
                          util::format_double(r), util::format_double(f1),
                          std::to_string(support), display_2dp(p),
                          display_2dp(r), display_2dp(f1), joined});
  };
  for (const auto& label : labels.labels()) {
    const auto& m = report.per_class[label.index];
    row(label.display_name, m.precision, m.recall, m.f1, m.support,
        flag_names(m));
  }
  const auto& agg = report.aggregate;
  out += csv::join_row({"accuracy", "", "", util::format_double(agg.accuracy),
                        std::to_string(agg.total_support), "", "",
                        display_2dp(agg.accuracy), ""});
  row("macro avg", agg.macro.precision, agg.macro.recall, agg.macro.f1,
      agg.total_support, {});
  row("weighted avg", agg.weighted.precision, agg.weighted.recall,
      agg.weighted.f1, agg.total_support, {});
  return out;
}

std::string render_report_json(const EvaluationReport& report,
                               const LabelSet& labels) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["per_class"] = ordered_json::array();
  for (const auto& label : labels.labels()) {
    const auto& m = report.per_class[label.index];
    ordered_json entry;
    entry["label"] = label.display_name;
    entry["gics_name"] = label.gics_name;
    entry["precision"] = m.precision;
    entry["recall"] = m.recall;
    entry["f1"] = m.f1;
    entry["support"] = m.support;
    entry["precision_display"] = display_2dp(m.precision);
    entry["recall_display"] = display_2dp(m.recall);
    entry["f1_display"] = display_2dp(m.f1);
    entry["flags"] = flag_names(m);
    doc["per_class"].push_back(std::move(entry));
  }
  const auto& agg = report.aggregate;
  doc["accuracy"] = agg.accuracy;
  doc["accuracy_display"] = display_2dp(agg.accuracy);
  const auto avg_json = [](const Averages& avg) {
    ordered_json obj;
    obj["precision"] = avg.precision;
    obj["recall"] = avg.recall;
    obj["f1"] = avg.f1;
    obj["precision_display"] = display_2dp(avg.precision);
    obj["recall_display"] = display_2dp(avg.recall);
    obj["f1_display"] = display_2dp(avg.f1);
    return obj;
  };
  doc["macro_avg"] = avg_json(agg.macro);
  doc["weighted_avg"] = avg_json(agg.weighted);
  doc["total_support"] = agg.total_support;
  return doc.dump(2) + "\n";
}

namespace {

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string render_heatmap_svg(const ConfusionMatrix& cm) {
  constexpr std::size_t kCell = 64;
  constexpr std::size_t kLeft = 280;
  constexpr std::size_t kTop = 24;
  constexpr std::size_t kRight = 24;
  constexpr std::size_t kBottom = 280;
  const std::size_t k = cm.size();
  const std::size_t grid = kCell * k;
  const std::size_t width = kLeft + grid + kRight;
  const std::size_t height = kTop + grid + kBottom;

  std::size_t max_count = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      max_count = std::max(max_count, cm.at(i, j));
    }
  }

  std::string svg;
  char buf[320];
  const auto emit = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof(buf), fmt, args...);
    svg += buf;
  };
  emit("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%zu\" "
       "height=\"%zu\" viewBox=\"0 0 %zu %zu\">\n",
       width, height, width, height);
  emit("<rect width=\"%zu\" height=\"%zu\" fill=\"#ffffff\"/>\n", width,
       height);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t count = cm.at(i, j);
      long long level = 255;
      if (max_count > 0) {
        level = 255 - std::llround(255.0 * static_cast<double>(count) /
                                   static_cast<double>(max_count));
      }
      const std::size_t x = kLeft + j * kCell;
      const std::size_t y = kTop + i * kCell;
      emit("<rect x=\"%zu\" y=\"%zu\" width=\"%zu\" height=\"%zu\" "
           "fill=\"rgb(%lld,%lld,%lld)\" stroke=\"#cccccc\"/>\n",
           x, y, kCell, kCell, level, level, level);
      const char* text_fill = level < 128 ? "#ffffff" : "#000000";
      emit("<text x=\"%zu\" y=\"%zu\" text-anchor=\"middle\" "
           "dominant-baseline=\"central\" font-family=\"sans-serif\" "
           "font-size=\"12\" fill=\"%s\">%zu</text>\n",
           x + kCell / 2, y + kCell / 2, text_fill, count);
    }
  }
  for (const auto& label : cm.labels().labels()) {
    const std::string name = xml_escape(label.display_name);
    const std::size_t row_mid = kTop + label.index * kCell + kCell / 2;
    emit("<text x=\"%zu\" y=\"%zu\" text-anchor=\"end\" "
         "dominant-baseline=\"central\" font-family=\"sans-serif\" "
         "font-size=\"12\" fill=\"#000000\">%s</text>\n",
         kLeft - 8, row_mid, name.c_str());
    const std::size_t col_mid = kLeft + label.index * kCell + kCell / 2;
    emit("<text x=\"%zu\" y=\"%zu\" text-anchor=\"end\" "
         "font-family=\"sans-serif\" font-size=\"12\" fill=\"#000000\" "
         "transform=\"rotate(-60 %zu %zu)\">%s</text>\n",
         col_mid, kTop + grid + 16, col_mid, kTop + grid + 16, name.c_str());
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace sectorzero

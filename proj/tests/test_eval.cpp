#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sectorzero/eval.hpp"
#include "support/error_check.hpp"
#include "support/oracles.hpp"

using namespace sectorzero;
using testsupport::error_code_of;

namespace {

LabelSet two_labels() {
  return LabelSet::custom({{"Energy", "Energy"}, {"Health Care", "Health Care"}});
}

// gold: E E H, pred: E H H -> matrix [[1,1],[0,1]]
EvaluationReport small_report() {
  const std::vector<std::string> gold = {"Energy", "Energy", "Health Care"};
  const std::vector<std::string> pred = {"Energy", "Health Care", "Health Care"};
  return build_report(confusion_matrix(gold, pred, two_labels()));
}

std::vector<std::string> indices_to_names(const std::vector<std::size_t>& idx,
                                          const LabelSet& labels) {
  std::vector<std::string> names;
  names.reserve(idx.size());
  for (const auto i : idx) names.push_back(labels.at(i).gics_name);
  return names;
}

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("confusion matrix counts gold rows against predicted columns") {
  const auto labels = two_labels();
  const std::vector<std::string> gold = {"Energy", "Energy", "Health Care"};

  const auto perfect = confusion_matrix(gold, gold, labels);
  CHECK(perfect.at(0, 0) == 2);
  CHECK(perfect.at(0, 1) == 0);
  CHECK(perfect.at(1, 0) == 0);
  CHECK(perfect.at(1, 1) == 1);
  CHECK(perfect.trace() == 3);
  CHECK(perfect.total() == 3);

  const std::vector<std::string> pred = {"Energy", "Health Care", "Health Care"};
  const auto cm = confusion_matrix(gold, pred, labels);
  CHECK(cm.at(0, 0) == 1);
  CHECK(cm.at(0, 1) == 1);
  CHECK(cm.at(1, 0) == 0);
  CHECK(cm.at(1, 1) == 1);
  CHECK(cm.row_sum(0) == 2);
  CHECK(cm.col_sum(1) == 2);
  CHECK(cm.trace() == 2);
}

TEST_CASE("confusion matrix validates its inputs") {
  const auto labels = two_labels();
  CHECK(error_code_of([&] {
          confusion_matrix({"Energy"}, {}, labels);
        }) == ErrorCode::LengthMismatch);
  CHECK(error_code_of([&] {
          confusion_matrix({"Energy"}, {"Petroleum"}, labels);
        }) == ErrorCode::UnknownLabel);
  CHECK(error_code_of([&] {
          confusion_matrix({"Petroleum"}, {"Energy"}, labels);
        }) == ErrorCode::UnknownLabel);
}

TEST_CASE("add accepts bulk counts") {
  ConfusionMatrix cm(two_labels());
  cm.add(0, 1, 5);
  cm.add(1, 1);
  CHECK(cm.at(0, 1) == 5);
  CHECK(cm.total() == 6);
}

TEST_CASE("per-class metrics from a small matrix") {
  const auto report = small_report();
  const auto& energy = report.per_class[0];
  CHECK(energy.precision == doctest::Approx(1.0));
  CHECK(energy.recall == doctest::Approx(0.5));
  CHECK(energy.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(energy.support == 2);
  CHECK(!energy.precision_undefined);
  CHECK(!energy.recall_undefined);

  const auto& health = report.per_class[1];
  CHECK(health.precision == doctest::Approx(0.5));
  CHECK(health.recall == doctest::Approx(1.0));
  CHECK(health.support == 1);
}

TEST_CASE("zero denominators report zero and set flags") {
  const auto labels =
      LabelSet::custom({{"A", "A"}, {"B", "B"}, {"C", "C"}});
  // C never appears in gold or predictions.
  const auto cm = confusion_matrix({"A", "B"}, {"A", "A"}, labels);
  const auto metrics = class_metrics(cm);
  CHECK(metrics[2].precision == 0.0);
  CHECK(metrics[2].recall == 0.0);
  CHECK(metrics[2].f1 == 0.0);
  CHECK(metrics[2].support == 0);
  CHECK(metrics[2].precision_undefined);
  CHECK(metrics[2].recall_undefined);
  // B is in gold but never predicted: only precision is undefined.
  CHECK(metrics[1].precision_undefined);
  CHECK(!metrics[1].recall_undefined);
  CHECK(metrics[1].support == 1);
}

TEST_CASE("f1 is the harmonic mean, zero when both inputs are zero") {
  CHECK(f1_score(0.80, 0.89) == doctest::Approx(0.84260355).epsilon(1e-8));
  CHECK(display_2dp(f1_score(0.80, 0.89)) == "0.84");
  CHECK(f1_score(0.0, 0.0) == 0.0);
  CHECK(f1_score(1.0, 1.0) == 1.0);
  CHECK(f1_score(0.5, 0.5) == doctest::Approx(0.5));
}

TEST_CASE("macro averages include zero-support classes") {
  const auto labels =
      LabelSet::custom({{"A", "A"}, {"B", "B"}, {"C", "C"}});
  const auto cm = confusion_matrix({"A", "B"}, {"A", "B"}, labels);
  const auto metrics = class_metrics(cm);
  const auto macro = macro_average(metrics);
  // Two perfect classes and one all-zero class, averaged over three.
  CHECK(macro.precision == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(macro.recall == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(macro.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("weighted averages scale by support") {
  const auto report = small_report();
  const auto& agg = report.aggregate;
  CHECK(agg.weighted.precision ==
        doctest::Approx((2.0 * 1.0 + 1.0 * 0.5) / 3.0).epsilon(1e-12));
  CHECK(agg.weighted.recall ==
        doctest::Approx((2.0 * 0.5 + 1.0 * 1.0) / 3.0).epsilon(1e-12));
  CHECK(agg.accuracy == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(agg.total_support == 3);
}

TEST_CASE("empty evaluation is an error") {
  ConfusionMatrix cm(two_labels());
  const auto metrics = class_metrics(cm);
  CHECK(error_code_of([&] { weighted_average(metrics); }) ==
        ErrorCode::EmptyEvaluation);
  CHECK(error_code_of([&] { aggregate_metrics(metrics, cm); }) ==
        ErrorCode::EmptyEvaluation);
}

TEST_CASE("accuracy equals weighted recall") {
  std::mt19937_64 rng(17);
  const auto labels = LabelSet::builtin(LabelVariant::Original);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 60;
    std::vector<std::size_t> gold(n), pred(n);
    for (std::size_t i = 0; i < n; ++i) {
      gold[i] = rng() % labels.size();
      pred[i] = rng() % labels.size();
    }
    const auto cm = confusion_matrix(indices_to_names(gold, labels),
                                     indices_to_names(pred, labels), labels);
    const auto report = build_report(cm);
    CHECK(report.aggregate.accuracy ==
          doctest::Approx(report.aggregate.weighted.recall).epsilon(1e-12));
    // Precision weighted by column sums also recovers the trace.
    double recovered = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      recovered +=
          report.per_class[i].precision * static_cast<double>(cm.col_sum(i));
    }
    CHECK(recovered ==
          doctest::Approx(static_cast<double>(cm.trace())).epsilon(1e-9));
  }
}

TEST_CASE("aggregates are invariant under label reordering") {
  const auto forward =
      LabelSet::custom({{"A", "A"}, {"B", "B"}, {"C", "C"}});
  const auto shuffled =
      LabelSet::custom({{"C", "C"}, {"A", "A"}, {"B", "B"}});
  const std::vector<std::string> gold = {"A", "A", "B", "C", "C", "B", "A"};
  const std::vector<std::string> pred = {"A", "B", "B", "C", "A", "B", "C"};
  const auto a = build_report(confusion_matrix(gold, pred, forward)).aggregate;
  const auto b = build_report(confusion_matrix(gold, pred, shuffled)).aggregate;
  CHECK(a.accuracy == doctest::Approx(b.accuracy).epsilon(1e-12));
  CHECK(a.macro.f1 == doctest::Approx(b.macro.f1).epsilon(1e-12));
  CHECK(a.weighted.precision ==
        doctest::Approx(b.weighted.precision).epsilon(1e-12));
  CHECK(a.total_support == b.total_support);
}

TEST_CASE("report matches an independent enumeration on random inputs") {
  std::mt19937_64 rng(23);
  const auto labels = LabelSet::builtin(LabelVariant::Enriched);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 80;
    std::vector<std::size_t> gold(n), pred(n);
    for (std::size_t i = 0; i < n; ++i) {
      gold[i] = rng() % labels.size();
      pred[i] = rng() % labels.size();
    }
    const auto cm = confusion_matrix(indices_to_names(gold, labels),
                                     indices_to_names(pred, labels), labels);
    const auto report = build_report(cm);
    const auto want = testsupport::oracle_report(gold, pred, labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      for (std::size_t j = 0; j < labels.size(); ++j) {
        CHECK(cm.at(i, j) == want.matrix[i][j]);
      }
      CHECK(report.per_class[i].precision ==
            doctest::Approx(want.per_class[i].precision).epsilon(1e-12));
      CHECK(report.per_class[i].recall ==
            doctest::Approx(want.per_class[i].recall).epsilon(1e-12));
      CHECK(report.per_class[i].f1 ==
            doctest::Approx(want.per_class[i].f1).epsilon(1e-12));
      CHECK(report.per_class[i].support == want.per_class[i].support);
    }
    CHECK(report.aggregate.accuracy ==
          doctest::Approx(want.accuracy).epsilon(1e-12));
    CHECK(report.aggregate.macro.f1 ==
          doctest::Approx(want.macro_f1).epsilon(1e-12));
    CHECK(report.aggregate.weighted.f1 ==
          doctest::Approx(want.weighted_f1).epsilon(1e-12));
  }
}

TEST_CASE("display rounding is two decimals, half away from zero") {
  CHECK(display_2dp(0.0) == "0.00");
  CHECK(display_2dp(1.0) == "1.00");
  CHECK(display_2dp(0.8426) == "0.84");
  CHECK(display_2dp(0.8453) == "0.85");
  CHECK(display_2dp(0.125) == "0.13");
  CHECK(display_2dp(-0.125) == "-0.13");
  CHECK(display_2dp(2.0 / 3.0) == "0.67");
}

TEST_CASE("text report lays out like a classification report") {
  const auto report = small_report();
  const auto text = render_report_text(report, two_labels());
  const std::string expected =
      "             precision    recall  f1-score   support\n"
      "\n"
      "      Energy      1.00      0.50      0.67         2\n"
      " Health Care      0.50      1.00      0.67         1\n"
      "\n"
      "    accuracy                          0.67         3\n"
      "   macro avg      0.75      0.75      0.67         3\n"
      "weighted avg      0.83      0.67      0.67         3\n";
  CHECK(text == expected);
}

TEST_CASE("long display names widen the label column") {
  const auto labels = LabelSet::custom(
      {{"Energy", "Oil, Natural Gas, Consumable Fuels and Petroleum"},
       {"Health Care", "Health Care"}});
  const auto cm =
      confusion_matrix({"Energy", "Health Care"}, {"Energy", "Health Care"}, labels);
  const auto text = render_report_text(build_report(cm), labels);
  const auto first_newline = text.find('\n');
  // Name column width follows the longest display name (48 characters).
  CHECK(first_newline == 48 + 4 * 10);
  CHECK(text.find("Oil, Natural Gas, Consumable Fuels and Petroleum      1.00") !=
        std::string::npos);
}

TEST_CASE("csv report carries raw and display values") {
  const auto labels = two_labels();
  const auto cm = confusion_matrix({"Energy", "Energy", "Health Care"},
                                   {"Energy", "Energy", "Health Care"}, labels);
  const auto text = render_report_csv(build_report(cm), labels);
  CHECK(text ==
        "label,precision,recall,f1,support,precision_display,recall_display,"
        "f1_display,flags\n"
        "Energy,1,1,1,2,1.00,1.00,1.00,\n"
        "Health Care,1,1,1,1,1.00,1.00,1.00,\n"
        "accuracy,,,1,3,,,1.00,\n"
        "macro avg,1,1,1,3,1.00,1.00,1.00,\n"
        "weighted avg,1,1,1,3,1.00,1.00,1.00,\n");
}

TEST_CASE("csv flags column names the undefined denominators") {
  const auto labels =
      LabelSet::custom({{"A", "A"}, {"B", "B"}, {"C", "C"}});
  const auto cm = confusion_matrix({"A", "B"}, {"A", "A"}, labels);
  const auto text = render_report_csv(build_report(cm), labels);
  CHECK(text.find("precision_undefined|recall_undefined") != std::string::npos);
  CHECK(text.find("B,0,0,0,1,0.00,0.00,0.00,precision_undefined\n") !=
        std::string::npos);
}

TEST_CASE("json report round-trips values exactly") {
  const auto report = small_report();
  const auto text = render_report_json(report, two_labels());
  const auto doc = nlohmann::json::parse(text);
  REQUIRE(doc.at("per_class").size() == 2);
  CHECK(doc.at("per_class")[0].at("label") == "Energy");
  CHECK(doc.at("per_class")[0].at("gics_name") == "Energy");
  CHECK(doc.at("per_class")[0].at("precision").get<double>() == 1.0);
  CHECK(doc.at("per_class")[0].at("recall").get<double>() == 0.5);
  CHECK(doc.at("per_class")[0].at("f1").get<double>() ==
        report.per_class[0].f1);
  CHECK(doc.at("per_class")[0].at("f1_display") == "0.67");
  CHECK(doc.at("per_class")[0].at("flags").empty());
  CHECK(doc.at("accuracy").get<double>() == report.aggregate.accuracy);
  CHECK(doc.at("accuracy_display") == "0.67");
  CHECK(doc.at("macro_avg").at("precision").get<double>() ==
        report.aggregate.macro.precision);
  CHECK(doc.at("weighted_avg").at("f1_display") == "0.67");
  CHECK(doc.at("total_support") == 3);
  CHECK(text.back() == '\n');
}

TEST_CASE("heatmap fills scale from white to black") {
  const auto labels = two_labels();
  ConfusionMatrix cm(labels);

  const auto blank = render_heatmap_svg(cm);
  CHECK(blank.find("rgb(255,255,255)") != std::string::npos);
  CHECK(blank.find("rgb(0,0,0)") == std::string::npos);

  cm.add(0, 0, 10);
  cm.add(1, 1, 5);
  const auto svg = render_heatmap_svg(cm);
  CHECK(svg.find("fill=\"rgb(0,0,0)\"") != std::string::npos);     // max cell
  CHECK(svg.find("fill=\"rgb(127,127,127)\"") != std::string::npos);  // half
  CHECK(svg.find("fill=\"rgb(255,255,255)\"") != std::string::npos);  // zero
  // Dark cells switch to white text.
  CHECK(svg.find("fill=\"#ffffff\">10</text>") != std::string::npos);
  CHECK(svg.find("fill=\"#ffffff\">5</text>") != std::string::npos);
  CHECK(svg.find("fill=\"#000000\">0</text>") != std::string::npos);
}

TEST_CASE("heatmap geometry and determinism") {
  const auto labels = two_labels();
  ConfusionMatrix cm(labels);
  cm.add(0, 1, 3);
  const auto svg = render_heatmap_svg(cm);
  // 280 left + 2*64 grid + 24 right wide; 24 + grid + 280 tall.
  CHECK(svg.find("width=\"432\" height=\"432\"") != std::string::npos);
  CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
  CHECK(render_heatmap_svg(cm) == svg);
}

TEST_CASE("heatmap escapes markup in display names") {
  const auto labels = LabelSet::custom({{"AB", "A&B <\"X\">"}});
  ConfusionMatrix cm(labels);
  const auto svg = render_heatmap_svg(cm);
  CHECK(svg.find("A&amp;B &lt;&quot;X&quot;&gt;") != std::string::npos);
  CHECK(svg.find("A&B") == std::string::npos);
}

}  // TEST_SUITE

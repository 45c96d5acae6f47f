#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sectorzero/cache.hpp"
#include "sectorzero/corpus.hpp"
#include "sectorzero/nli.hpp"
#include "sectorzero/taxonomy.hpp"

namespace sectorzero {

enum class AggregationMode { SingleLabel, MultiLabel };

AggregationMode aggregation_mode_from_string(std::string_view s);
const char* aggregation_mode_name(AggregationMode mode);

struct Prediction {
  std::string doc_id;
  std::vector<double> scores;  // aligned to LabelSet order
  std::size_t predicted_index = 0;

  bool operator==(const Prediction&) const = default;
};

// Softmax over entailment logits, shifted by the max for stability.
std::vector<double> single_label_scores(const std::vector<NliLogits>& logits);

// Per-label sigmoid of (entailment - contradiction); no cross-label
// normalization.
std::vector<double> multi_label_scores(const std::vector<NliLogits>& logits);

// Smallest index attaining the maximum.
std::size_t first_argmax(const std::vector<double>& scores);

// Keeps at most max_chars code points, cutting back to the last
// whitespace inside the window when one exists.
std::string truncate_premise(const std::string& text, std::size_t max_chars);

struct ClassifyOptions {
  AggregationMode mode = AggregationMode::SingleLabel;
  std::size_t truncation_chars = 1200;
  std::size_t batch_size = 16;
  std::size_t parallelism = 1;
};

// Progress counters; still meaningful when a backend failure aborts a run
// partway (completed work is counted).
struct RunCounters {
  std::size_t records = 0;
  std::size_t pairs_total = 0;
  std::size_t cache_hits = 0;
  std::size_t backend_pairs = 0;  // pairs actually sent to the backend
};

Prediction classify_document(const CompanyRecord& record,
                             const LabelSet& labels, NliBackend& backend,
                             const ClassifyOptions& options = {});

// One prediction per record, in corpus order regardless of scheduling.
// With a cache, known pairs are served without backend calls and newly
// scored pairs are stored as they complete, so an aborted run resumes
// where it stopped. Concurrency: record scoring is sharded only when the
// backend is concurrent-safe and options.parallelism > 1; otherwise pairs
// go to the backend serially in batch_size chunks.
std::vector<Prediction> classify_corpus(const Corpus& corpus,
                                        const LabelSet& labels,
                                        NliBackend& backend,
                                        const ClassifyOptions& options = {},
                                        ScoreCache* cache = nullptr,
                                        RunCounters* counters = nullptr);

// Reference implementation: a plain loop over classify_document. Kept for
// equivalence tests and benchmarks against classify_corpus.
std::vector<Prediction> classify_corpus_serial(
    const Corpus& corpus, const LabelSet& labels, NliBackend& backend,
    const ClassifyOptions& options = {});

}  // namespace sectorzero

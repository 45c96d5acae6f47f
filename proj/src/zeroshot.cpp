#include "sectorzero/zeroshot.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <unordered_map>

#include "sectorzero/errors.hpp"

namespace sectorzero {

AggregationMode aggregation_mode_from_string(std::string_view s) {
  if (s == "single") return AggregationMode::SingleLabel;
  if (s == "multi") return AggregationMode::MultiLabel;
  throw Error(ErrorCode::InvalidConfig,
              "unknown aggregation mode \"" + std::string(s) + "\"");
}

const char* aggregation_mode_name(AggregationMode mode) {
  return mode == AggregationMode::SingleLabel ? "single" : "multi";
}

std::vector<double> single_label_scores(const std::vector<NliLogits>& logits) {
  double max_e = -std::numeric_limits<double>::infinity();
  for (const auto& l : logits) max_e = std::max(max_e, l.entailment);
  std::vector<double> scores(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    scores[i] = std::exp(logits[i].entailment - max_e);
    sum += scores[i];
  }
  for (auto& s : scores) s /= sum;
  return scores;
}

std::vector<double> multi_label_scores(const std::vector<NliLogits>& logits) {
  std::vector<double> scores(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) {
    const double d = logits[i].entailment - logits[i].contradiction;
    if (d >= 0.0) {
      scores[i] = 1.0 / (1.0 + std::exp(-d));
    } else {
      const double e = std::exp(d);
      scores[i] = e / (1.0 + e);
    }
  }
  return scores;
}

std::size_t first_argmax(const std::vector<double>& scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

std::string truncate_premise(const std::string& text, std::size_t max_chars) {
  // Code points start at any byte that is not a UTF-8 continuation byte.
  std::size_t count = 0;
  std::size_t cut = text.size();
  for (std::size_t i = 0; i < text.size(); ++i) {
    if ((static_cast<unsigned char>(text[i]) & 0xC0) == 0x80) continue;
    if (count == max_chars) {
      cut = i;
      break;
    }
    ++count;
  }
  if (cut == text.size()) return text;

  const auto is_space = [&](std::size_t i) {
    const char c = text[i];
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  };
  std::size_t end = cut;
  while (end > 0 && !is_space(end - 1)) --end;
  if (end == 0) end = cut;  // no whitespace in the window; hard cut
  while (end > 0 && is_space(end - 1)) --end;
  return text.substr(0, end);
}

namespace {

std::vector<double> aggregate_scores(const std::vector<NliLogits>& logits,
                                     AggregationMode mode) {
  return mode == AggregationMode::SingleLabel ? single_label_scores(logits)
                                              : multi_label_scores(logits);
}

std::vector<std::string> build_hypotheses(const LabelSet& labels,
                                          const std::string& tmpl) {
  std::vector<std::string> hypotheses;
  hypotheses.reserve(labels.size());
  for (const auto& label : labels.labels()) {
    hypotheses.push_back(build_hypothesis(label, tmpl));
  }
  return hypotheses;
}

}  // namespace

Prediction classify_document(const CompanyRecord& record,
                             const LabelSet& labels, NliBackend& backend,
                             const ClassifyOptions& options) {
  if (labels.empty()) {
    throw Error(ErrorCode::EmptyLabelSet, "no labels to classify against");
  }
  const std::string premise =
      truncate_premise(record.description, options.truncation_chars);
  std::vector<NliPair> pairs;
  pairs.reserve(labels.size());
  for (const auto& label : labels.labels()) {
    pairs.push_back(
        {premise, build_hypothesis(label, backend.descriptor().hypothesis_template),
         label.display_name});
  }
  const auto logits = backend.score_pairs(pairs);
  if (logits.size() != pairs.size()) {
    throw Error(ErrorCode::ProtocolError,
                "backend returned " + std::to_string(logits.size()) +
                    " results for " + std::to_string(pairs.size()) + " pairs");
  }
  Prediction pred;
  pred.doc_id = record.id;
  pred.scores = aggregate_scores(logits, options.mode);
  pred.predicted_index = first_argmax(pred.scores);
  return pred;
}

std::vector<Prediction> classify_corpus(const Corpus& corpus,
                                        const LabelSet& labels,
                                        NliBackend& backend,
                                        const ClassifyOptions& options,
                                        ScoreCache* cache,
                                        RunCounters* counters) {
  if (labels.empty()) {
    throw Error(ErrorCode::EmptyLabelSet, "no labels to classify against");
  }
  RunCounters local;
  RunCounters& tally = counters ? *counters : local;
  tally = {};
  const std::size_t n = corpus.size();
  const std::size_t k = labels.size();
  tally.records = n;
  tally.pairs_total = n * k;
  if (n == 0) return {};

  const auto& desc = backend.descriptor();
  const auto hypotheses = build_hypotheses(labels, desc.hypothesis_template);
  std::vector<std::string> premises(n);
  for (std::size_t r = 0; r < n; ++r) {
    premises[r] =
        truncate_premise(corpus.records[r].description, options.truncation_chars);
  }

  std::vector<NliLogits> all_logits(n * k);

  // Pairs the backend still has to score. With a cache, identical
  // premise/hypothesis pairs collapse onto one scored representative.
  struct PendingPair {
    std::size_t record;
    std::size_t label;
    std::string key;                  // empty when cache is off
    std::vector<std::size_t> aliases; // duplicate flat pair indices
  };
  std::vector<PendingPair> pending;
  if (cache != nullptr) {
    std::unordered_map<std::string, std::size_t> pending_by_key;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t l = 0; l < k; ++l) {
        std::string key = make_cache_key(desc.backend_id, desc.model_id,
                                         desc.hypothesis_template, premises[r],
                                         hypotheses[l]);
        if (const auto hit = cache->lookup(key)) {
          all_logits[r * k + l] = *hit;
          ++tally.cache_hits;
          continue;
        }
        const auto [it, inserted] =
            pending_by_key.emplace(std::move(key), pending.size());
        if (inserted) {
          pending.push_back({r, l, it->first, {}});
        } else {
          pending[it->second].aliases.push_back(r * k + l);
        }
      }
    }
  } else {
    pending.reserve(n * k);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t l = 0; l < k; ++l) pending.push_back({r, l, {}, {}});
    }
  }

  const std::size_t batch = std::max<std::size_t>(1, options.batch_size);
  const std::size_t chunk_count = (pending.size() + batch - 1) / batch;
  const bool parallel = backend.concurrent_safe() && options.parallelism > 1;
  std::exception_ptr failure;
  bool failed = false;

  const auto score_chunk = [&](std::size_t chunk_index) {
    const std::size_t begin = chunk_index * batch;
    const std::size_t end = std::min(begin + batch, pending.size());
    std::vector<NliPair> pairs;
    pairs.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
      pairs.push_back({premises[pending[i].record],
                       hypotheses[pending[i].label],
                       labels.at(pending[i].label).display_name});
    }
    const auto scored = backend.score_pairs(pairs);
    if (scored.size() != pairs.size()) {
      throw Error(ErrorCode::ProtocolError,
                  "backend returned " + std::to_string(scored.size()) +
                      " results for " + std::to_string(pairs.size()) +
                      " pairs");
    }
    for (std::size_t i = begin; i < end; ++i) {
      const auto& got = scored[i - begin];
      const auto& p = pending[i];
      all_logits[p.record * k + p.label] = got;
      for (const std::size_t flat : p.aliases) all_logits[flat] = got;
      if (cache != nullptr) cache->store(p.key, got);
    }
  };

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) \
    num_threads(static_cast<int>(options.parallelism)) if (parallel)
#endif
  for (std::ptrdiff_t ci = 0; ci < static_cast<std::ptrdiff_t>(chunk_count);
       ++ci) {
    bool skip;
#ifdef _OPENMP
#pragma omp atomic read
#endif
    skip = failed;
    if (skip) continue;
    try {
      score_chunk(static_cast<std::size_t>(ci));
      const std::size_t begin = static_cast<std::size_t>(ci) * batch;
      const std::size_t done =
          std::min(begin + batch, pending.size()) - begin;
#ifdef _OPENMP
#pragma omp atomic
#endif
      tally.backend_pairs += done;
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical(sectorzero_classify_failure)
#endif
      {
        if (!failure) failure = std::current_exception();
      }
#ifdef _OPENMP
#pragma omp atomic write
#endif
      failed = true;
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Prediction> predictions(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) \
    num_threads(static_cast<int>(options.parallelism)) if (parallel)
#endif
  for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(n); ++r) {
    const std::size_t rr = static_cast<std::size_t>(r);
    std::vector<NliLogits> row(all_logits.begin() +
                                   static_cast<std::ptrdiff_t>(rr * k),
                               all_logits.begin() +
                                   static_cast<std::ptrdiff_t>((rr + 1) * k));
    auto& pred = predictions[rr];
    pred.doc_id = corpus.records[rr].id;
    pred.scores = aggregate_scores(row, options.mode);
    pred.predicted_index = first_argmax(pred.scores);
  }
  return predictions;
}

std::vector<Prediction> classify_corpus_serial(const Corpus& corpus,
                                               const LabelSet& labels,
                                               NliBackend& backend,
                                               const ClassifyOptions& options) {
  std::vector<Prediction> predictions;
  predictions.reserve(corpus.size());
  for (const auto& record : corpus.records) {
    predictions.push_back(classify_document(record, labels, backend, options));
  }
  return predictions;
}

}  // namespace sectorzero

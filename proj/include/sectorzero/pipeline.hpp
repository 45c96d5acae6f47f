#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "sectorzero/corpus.hpp"
#include "sectorzero/eval.hpp"
#include "sectorzero/nli.hpp"
#include "sectorzero/taxonomy.hpp"
#include "sectorzero/zeroshot.hpp"

namespace sectorzero {

struct RunConfig {
  std::string corpus_path;
  CorpusFormat format = CorpusFormat::Csv;
  FieldMap field_map;
  std::string labels = "enriched";  // "original" | "enriched" | file path
  std::string backend = "mock";     // "mock" | "remote"
  std::string endpoint;
  std::string model_id = "valhalla/distilbart-mnli-12-3";
  std::string hypothesis_template = "This example is {}.";
  AggregationMode mode = AggregationMode::SingleLabel;
  std::size_t truncation_chars = 1200;
  std::size_t batch_size = 16;
  std::size_t parallelism = 1;
  std::string cache_path;
  std::uint64_t seed = 0;
  std::string output_dir = "out";
};

// Reads a JSON config file; unknown keys are rejected so typos surface.
RunConfig load_config_json(const std::filesystem::path& path);

// Enforces RunConfig invariants. For the remote backend an empty endpoint
// falls back to $SECTORZERO_ENDPOINT before failing.
void validate_config(RunConfig& config);

LabelSet resolve_labels(const RunConfig& config);

std::unique_ptr<NliBackend> make_backend(const RunConfig& config);

ClassifyOptions classify_options(const RunConfig& config);

struct RunManifest {
  std::string status = "ok";
  std::string error;
  std::string started_at;
  std::string finished_at;
  BackendDescriptor backend;
  RunCounters counters;
  std::size_t filtered_records = 0;
  RunConfig config;
};

std::string manifest_json(const RunManifest& manifest);

// One JSONL line per prediction:
//   {"id": ..., "predicted": <gics_name>, "scores": {<display_name>: ...}}
std::string serialize_predictions(const std::vector<Prediction>& predictions,
                                  const LabelSet& labels);

struct NamedPrediction {
  std::string id;
  std::string predicted;  // gics_name
};

std::vector<NamedPrediction> read_predictions(
    const std::filesystem::path& path);

// Builds the evaluation from a corpus and an id-matched prediction list;
// every gold-labeled record must have a prediction.
ConfusionMatrix evaluate_predictions(const Corpus& corpus,
                                     const std::vector<NamedPrediction>& preds,
                                     const LabelSet& labels);

// Writes report.txt / report.csv / report.json / confusion.svg into
// output_dir.
void write_report_artifacts(const std::filesystem::path& output_dir,
                            const EvaluationReport& report,
                            const ConfusionMatrix& cm, const LabelSet& labels);

struct PipelineResult {
  RunManifest manifest;
  std::string report_text;
};

// End-to-end run: ingest (gold-labeled records only), classify, evaluate,
// then write predictions.jsonl, the report artifacts, and manifest.json
// into config.output_dir. A backend failure still writes a manifest with
// status "failed" and the progress counters, then rethrows.
PipelineResult run_pipeline(const RunConfig& config);

}  // namespace sectorzero

#include "sectorzero/pipeline.hpp"

#include <cstdlib>
#include <optional>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "sectorzero/cache.hpp"
#include "sectorzero/errors.hpp"
#include "sectorzero/remote.hpp"
#include "sectorzero/version.hpp"
#include "sectorzero/util.hpp"

namespace sectorzero {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::int64_t get_int(const json& obj, const std::string& key,
                     std::int64_t min_value) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::InvalidConfig, "\"" + key + "\" must be an integer");
  }
  const auto n = v.get<std::int64_t>();
  if (n < min_value) {
    throw Error(ErrorCode::InvalidConfig,
                "\"" + key + "\" must be >= " + std::to_string(min_value));
  }
  return n;
}

std::string get_string(const json& obj, const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_string()) {
    throw Error(ErrorCode::InvalidConfig, "\"" + key + "\" must be a string");
  }
  return v.get<std::string>();
}

}  // namespace

RunConfig load_config_json(const std::filesystem::path& path) {
  const auto doc = json::parse(util::read_file(path), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorCode::InvalidConfig,
                path.string() + ": not a JSON object");
  }
  static const std::unordered_map<std::string, int> known = {
      {"corpus", 0},     {"format", 0},           {"field_map", 0},
      {"labels", 0},     {"backend", 0},          {"endpoint", 0},
      {"model", 0},      {"template", 0},         {"mode", 0},
      {"truncation_chars", 0}, {"batch_size", 0}, {"parallelism", 0},
      {"cache", 0},      {"seed", 0},             {"out", 0}};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) {
      throw Error(ErrorCode::InvalidConfig,
                  path.string() + ": unknown config key \"" + key + "\"");
    }
  }
  RunConfig config;
  if (doc.contains("corpus")) config.corpus_path = get_string(doc, "corpus");
  if (doc.contains("format")) {
    config.format = corpus_format_from_string(get_string(doc, "format"));
  }
  if (doc.contains("field_map")) {
    const auto& fm = doc.at("field_map");
    if (!fm.is_object()) {
      throw Error(ErrorCode::InvalidConfig, "\"field_map\" must be an object");
    }
    for (const auto& [key, value] : fm.items()) {
      if (!value.is_string()) {
        throw Error(ErrorCode::InvalidConfig,
                    "field_map entries must be strings");
      }
      if (key == "id") config.field_map.id = value.get<std::string>();
      else if (key == "name") config.field_map.name = value.get<std::string>();
      else if (key == "description")
        config.field_map.description = value.get<std::string>();
      else if (key == "gics_sector")
        config.field_map.gics_sector = value.get<std::string>();
      else
        throw Error(ErrorCode::InvalidConfig,
                    "unknown field_map key \"" + key + "\"");
    }
  }
  if (doc.contains("labels")) config.labels = get_string(doc, "labels");
  if (doc.contains("backend")) config.backend = get_string(doc, "backend");
  if (doc.contains("endpoint")) config.endpoint = get_string(doc, "endpoint");
  if (doc.contains("model")) config.model_id = get_string(doc, "model");
  if (doc.contains("template")) {
    config.hypothesis_template = get_string(doc, "template");
  }
  if (doc.contains("mode")) {
    config.mode = aggregation_mode_from_string(get_string(doc, "mode"));
  }
  if (doc.contains("truncation_chars")) {
    config.truncation_chars =
        static_cast<std::size_t>(get_int(doc, "truncation_chars", 0));
  }
  if (doc.contains("batch_size")) {
    config.batch_size = static_cast<std::size_t>(get_int(doc, "batch_size", 0));
  }
  if (doc.contains("parallelism")) {
    config.parallelism =
        static_cast<std::size_t>(get_int(doc, "parallelism", 0));
  }
  if (doc.contains("cache")) config.cache_path = get_string(doc, "cache");
  if (doc.contains("seed")) {
    config.seed = static_cast<std::uint64_t>(get_int(doc, "seed", 0));
  }
  if (doc.contains("out")) config.output_dir = get_string(doc, "out");
  return config;
}

void validate_config(RunConfig& config) {
  if (config.batch_size < 1) {
    throw Error(ErrorCode::InvalidConfig, "batch_size must be >= 1");
  }
  if (config.parallelism < 1) {
    throw Error(ErrorCode::InvalidConfig, "parallelism must be >= 1");
  }
  if (config.truncation_chars < 64) {
    throw Error(ErrorCode::InvalidConfig, "truncation_chars must be >= 64");
  }
  if (config.labels.empty()) {
    throw Error(ErrorCode::InvalidConfig, "labels must not be empty");
  }
  if (config.output_dir.empty()) {
    throw Error(ErrorCode::InvalidConfig, "output directory must not be empty");
  }
  if (config.backend == "mock") return;
  if (config.backend == "remote") {
    if (config.endpoint.empty()) {
      if (const char* env = std::getenv("SECTORZERO_ENDPOINT")) {
        config.endpoint = env;
      }
    }
    if (config.endpoint.empty()) {
      throw Error(ErrorCode::InvalidConfig,
                  "remote backend needs --endpoint or SECTORZERO_ENDPOINT");
    }
    return;
  }
  throw Error(ErrorCode::InvalidConfig,
              "unknown backend \"" + config.backend + "\"");
}

LabelSet resolve_labels(const RunConfig& config) {
  if (config.labels == "original") {
    return LabelSet::builtin(LabelVariant::Original);
  }
  if (config.labels == "enriched") {
    return LabelSet::builtin(LabelVariant::Enriched);
  }
  return LabelSet::load(config.labels);
}

std::unique_ptr<NliBackend> make_backend(const RunConfig& config) {
  if (config.backend == "remote") {
    return std::make_unique<RemoteNliBackend>(config.endpoint, config.model_id,
                                              config.hypothesis_template);
  }
  return std::make_unique<MockNliBackend>(config.model_id,
                                          config.hypothesis_template);
}

ClassifyOptions classify_options(const RunConfig& config) {
  ClassifyOptions options;
  options.mode = config.mode;
  options.truncation_chars = config.truncation_chars;
  options.batch_size = config.batch_size;
  options.parallelism = config.parallelism;
  return options;
}

namespace {

ordered_json config_to_json(const RunConfig& config) {
  ordered_json obj;
  obj["corpus"] = config.corpus_path;
  obj["format"] = corpus_format_name(config.format);
  obj["field_map"] = {{"id", config.field_map.id},
                      {"name", config.field_map.name},
                      {"description", config.field_map.description},
                      {"gics_sector", config.field_map.gics_sector}};
  obj["labels"] = config.labels;
  obj["backend"] = config.backend;
  obj["endpoint"] = config.endpoint;
  obj["model"] = config.model_id;
  obj["template"] = config.hypothesis_template;
  obj["mode"] = aggregation_mode_name(config.mode);
  obj["truncation_chars"] = config.truncation_chars;
  obj["batch_size"] = config.batch_size;
  obj["parallelism"] = config.parallelism;
  obj["cache"] = config.cache_path;
  obj["seed"] = config.seed;
  obj["out"] = config.output_dir;
  return obj;
}

}  // namespace

std::string manifest_json(const RunManifest& manifest) {
  ordered_json obj;
  obj["tool"] = "sectorzero";
  obj["tool_version"] = kToolVersion;
  obj["status"] = manifest.status;
  if (!manifest.error.empty()) obj["error"] = manifest.error;
  obj["started_at"] = manifest.started_at;
  obj["finished_at"] = manifest.finished_at;
  obj["backend"] = {{"backend_id", manifest.backend.backend_id},
                    {"model_id", manifest.backend.model_id},
                    {"template", manifest.backend.hypothesis_template}};
  obj["counts"] = {{"records", manifest.counters.records},
                   {"pairs_total", manifest.counters.pairs_total},
                   {"cache_hits", manifest.counters.cache_hits},
                   {"backend_calls", manifest.counters.backend_pairs},
                   {"filtered_records", manifest.filtered_records}};
  obj["config"] = config_to_json(manifest.config);
  return obj.dump(2) + "\n";
}

std::string serialize_predictions(const std::vector<Prediction>& predictions,
                                  const LabelSet& labels) {
  std::string out;
  for (const auto& pred : predictions) {
    ordered_json obj;
    obj["id"] = pred.doc_id;
    obj["predicted"] = labels.at(pred.predicted_index).gics_name;
    ordered_json scores;
    for (const auto& label : labels.labels()) {
      scores[label.display_name] = pred.scores[label.index];
    }
    obj["scores"] = std::move(scores);
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::vector<NamedPrediction> read_predictions(
    const std::filesystem::path& path) {
  const std::string content = util::read_file(path);
  std::vector<NamedPrediction> preds;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    const auto nl = content.find('\n', pos);
    const auto line_end = nl == std::string::npos ? content.size() : nl;
    const std::string_view line =
        util::trim(std::string_view(content).substr(pos, line_end - pos));
    pos = line_end + 1;
    ++line_no;
    if (line.empty()) continue;
    const auto obj = json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object() || !obj.contains("id") ||
        !obj["id"].is_string() || !obj.contains("predicted") ||
        !obj["predicted"].is_string()) {
      throw Error(ErrorCode::MalformedRecord,
                  path.string() + ":" + std::to_string(line_no) +
                      ": expected {\"id\", \"predicted\", ...}");
    }
    preds.push_back({obj["id"].get<std::string>(),
                     obj["predicted"].get<std::string>()});
  }
  return preds;
}

ConfusionMatrix evaluate_predictions(const Corpus& corpus,
                                     const std::vector<NamedPrediction>& preds,
                                     const LabelSet& labels) {
  std::unordered_map<std::string_view, std::string_view> by_id;
  for (const auto& p : preds) {
    if (!by_id.emplace(p.id, p.predicted).second) {
      throw Error(ErrorCode::DuplicateId,
                  "duplicate prediction for id \"" + p.id + "\"");
    }
  }
  std::vector<std::string> gold;
  std::vector<std::string> pred;
  for (const auto& rec : corpus.records) {
    if (!rec.gold_sector) continue;
    const auto it = by_id.find(rec.id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::MissingPrediction,
                  "no prediction for record \"" + rec.id + "\"");
    }
    gold.push_back(*rec.gold_sector);
    pred.emplace_back(it->second);
  }
  return confusion_matrix(gold, pred, labels);
}

void write_report_artifacts(const std::filesystem::path& output_dir,
                            const EvaluationReport& report,
                            const ConfusionMatrix& cm, const LabelSet& labels) {
  util::write_file_atomic(output_dir / "report.txt",
                          render_report_text(report, labels));
  util::write_file_atomic(output_dir / "report.csv",
                          render_report_csv(report, labels));
  util::write_file_atomic(output_dir / "report.json",
                          render_report_json(report, labels));
  util::write_file_atomic(output_dir / "confusion.svg",
                          render_heatmap_svg(cm));
}

PipelineResult run_pipeline(const RunConfig& config_in) {
  RunConfig config = config_in;
  validate_config(config);
  RunManifest manifest;
  manifest.config = config;
  manifest.started_at = util::iso8601_utc_now();

  const LabelSet labels = resolve_labels(config);
  const auto backend = make_backend(config);
  manifest.backend = backend->descriptor();
  const Corpus corpus = ingest_corpus(config.corpus_path, config.format,
                                      config.field_map, /*require_gold=*/true);
  manifest.filtered_records = corpus.filtered_count;

  std::optional<ScoreCache> cache;
  if (!config.cache_path.empty()) cache.emplace(config.cache_path);

  const std::filesystem::path out_dir = config.output_dir;
  PipelineResult result;
  try {
    const auto predictions =
        classify_corpus(corpus, labels, *backend, classify_options(config),
                        cache ? &*cache : nullptr, &manifest.counters);
    util::write_file_atomic(out_dir / "predictions.jsonl",
                            serialize_predictions(predictions, labels));
    std::vector<std::string> gold;
    std::vector<std::string> pred;
    gold.reserve(corpus.size());
    pred.reserve(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      gold.push_back(corpus.records[i].gold_sector.value_or(""));
      pred.push_back(labels.at(predictions[i].predicted_index).gics_name);
    }
    const auto cm = confusion_matrix(gold, pred, labels);
    const auto report = build_report(cm);
    write_report_artifacts(out_dir, report, cm, labels);
    result.report_text = render_report_text(report, labels);
  } catch (const std::exception& e) {
    manifest.status = "failed";
    manifest.error = e.what();
    manifest.finished_at = util::iso8601_utc_now();
    util::write_file_atomic(out_dir / "manifest.json",
                            manifest_json(manifest));
    throw;
  }
  manifest.finished_at = util::iso8601_utc_now();
  util::write_file_atomic(out_dir / "manifest.json", manifest_json(manifest));
  result.manifest = manifest;
  return result;
}

}  // namespace sectorzero

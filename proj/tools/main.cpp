#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <nlohmann/json.hpp>

#include "sectorzero/cache.hpp"
#include "sectorzero/corpus.hpp"
#include "sectorzero/enrich.hpp"
#include "sectorzero/errors.hpp"
#include "sectorzero/eval.hpp"
#include "sectorzero/pipeline.hpp"
#include "sectorzero/synthetic.hpp"
#include "sectorzero/text.hpp"
#include "sectorzero/version.hpp"
#include "sectorzero/zeroshot.hpp"
#include "sectorzero/util.hpp"

namespace {

using namespace sectorzero;

struct FlagValues {
  std::optional<std::string> config;
  std::optional<std::string> corpus;
  std::optional<std::string> format;
  std::optional<std::string> labels;
  std::optional<std::string> backend;
  std::optional<std::string> endpoint;
  std::optional<std::string> model;
  std::optional<std::string> hypothesis_template;
  std::optional<std::string> mode;
  std::optional<std::int64_t> batch_size;
  std::optional<std::int64_t> parallelism;
  std::optional<std::int64_t> truncation_chars;
  std::optional<std::string> cache;
  std::optional<std::int64_t> seed;
  std::optional<std::string> out;
  // subcommand extras
  std::optional<std::string> predictions;
  std::string lexicons = "data/lexicons";
  std::int64_t top_k = 30;
  std::int64_t name_terms = 5;
  std::int64_t per_class = 10;
  bool require_gold = false;
};

void add_shared_flags(CLI::App* sub, FlagValues& flags) {
  sub->add_option("--config", flags.config, "JSON config file; flags win");
  sub->add_option("--corpus", flags.corpus, "corpus file");
  sub->add_option("--format", flags.format, "corpus format: csv|jsonl");
  sub->add_option("--labels", flags.labels,
                  "label set: original|enriched|<path>");
  sub->add_option("--backend", flags.backend, "scoring backend: mock|remote");
  sub->add_option("--endpoint", flags.endpoint, "remote NLI server URL");
  sub->add_option("--model", flags.model, "model id sent to the backend");
  sub->add_option("--template", flags.hypothesis_template,
                  "hypothesis template with one {} placeholder");
  sub->add_option("--mode", flags.mode, "aggregation mode: single|multi");
  sub->add_option("--batch-size", flags.batch_size, "pairs per backend call");
  sub->add_option("--parallelism", flags.parallelism, "worker count");
  sub->add_option("--truncation-chars", flags.truncation_chars,
                  "premise length limit in characters");
  sub->add_option("--cache", flags.cache, "JSONL score cache file");
  sub->add_option("--seed", flags.seed, "generator seed");
  sub->add_option("--out", flags.out, "output directory");
}

std::int64_t require_non_negative(std::int64_t value, const char* flag) {
  if (value < 0) {
    throw Error(ErrorCode::InvalidConfig,
                std::string(flag) + " must be >= 0");
  }
  return value;
}

RunConfig build_config(const FlagValues& flags) {
  RunConfig config;
  if (flags.config) config = load_config_json(*flags.config);
  if (flags.corpus) config.corpus_path = *flags.corpus;
  if (flags.format) config.format = corpus_format_from_string(*flags.format);
  if (flags.labels) config.labels = *flags.labels;
  if (flags.backend) config.backend = *flags.backend;
  if (flags.endpoint) config.endpoint = *flags.endpoint;
  if (flags.model) config.model_id = *flags.model;
  if (flags.hypothesis_template) {
    config.hypothesis_template = *flags.hypothesis_template;
  }
  if (flags.mode) config.mode = aggregation_mode_from_string(*flags.mode);
  if (flags.batch_size) {
    config.batch_size = static_cast<std::size_t>(
        require_non_negative(*flags.batch_size, "--batch-size"));
  }
  if (flags.parallelism) {
    config.parallelism = static_cast<std::size_t>(
        require_non_negative(*flags.parallelism, "--parallelism"));
  }
  if (flags.truncation_chars) {
    config.truncation_chars = static_cast<std::size_t>(
        require_non_negative(*flags.truncation_chars, "--truncation-chars"));
  }
  if (flags.cache) config.cache_path = *flags.cache;
  if (flags.seed) {
    config.seed =
        static_cast<std::uint64_t>(require_non_negative(*flags.seed, "--seed"));
  }
  if (flags.out) config.output_dir = *flags.out;
  return config;
}

std::string corpus_file_name(CorpusFormat format) {
  return std::string("corpus.") + corpus_format_name(format);
}

void require_corpus(const RunConfig& config) {
  if (config.corpus_path.empty()) {
    throw Error(ErrorCode::InvalidConfig, "--corpus is required");
  }
}

int cmd_ingest(const FlagValues& flags) {
  const RunConfig config = build_config(flags);
  require_corpus(config);
  const Corpus corpus = ingest_corpus(config.corpus_path, config.format,
                                      config.field_map, flags.require_gold);
  const auto out_path =
      std::filesystem::path(config.output_dir) / corpus_file_name(config.format);
  write_corpus(out_path, corpus, config.format, config.field_map);
  std::cout << "ingested " << corpus.size() << " records ("
            << corpus.filtered_count << " filtered)\n"
            << "wrote " << out_path.string() << "\n";
  return 0;
}

int cmd_summary(const FlagValues& flags) {
  const RunConfig config = build_config(flags);
  require_corpus(config);
  const Corpus corpus = ingest_corpus(config.corpus_path, config.format,
                                      config.field_map, false);
  const LabelSet labels = resolve_labels(config);
  std::cout << render_summary_text(corpus_summary(corpus, labels), labels);
  return 0;
}

int cmd_enrich(const FlagValues& flags) {
  const RunConfig config = build_config(flags);
  require_corpus(config);
  const auto top_k =
      static_cast<std::size_t>(require_non_negative(flags.top_k, "--top-k"));
  const auto name_terms = static_cast<std::size_t>(
      require_non_negative(flags.name_terms, "--name-terms"));
  if (top_k == 0 || name_terms == 0) {
    throw Error(ErrorCode::InvalidConfig,
                "--top-k and --name-terms must be >= 1");
  }
  const Corpus corpus = ingest_corpus(config.corpus_path, config.format,
                                      config.field_map, false);
  const LabelSet labels = resolve_labels(config);
  const auto policy = StopwordPolicy::load_dir(flags.lexicons);

  std::vector<TokenList> docs;
  docs.reserve(corpus.size());
  DocsByClass by_class;
  for (const auto& rec : corpus.records) {
    auto tokens = apply_stopword_policy(tokenize(rec.description), policy);
    if (rec.gold_sector) by_class[*rec.gold_sector].push_back(tokens);
    docs.push_back(std::move(tokens));
  }
  const auto stats = fit_tfidf(docs);
  const auto rankings = rank_all_classes(stats, by_class, top_k);
  const auto proposals = propose_enriched_labels(rankings, name_terms);

  const std::filesystem::path out_dir = config.output_dir;
  util::write_file_atomic(out_dir / "rankings.csv", rankings_to_csv(rankings));
  nlohmann::ordered_json candidates;
  for (const auto& label : labels.labels()) {
    const auto it = proposals.find(label.gics_name);
    if (it != proposals.end()) candidates[label.gics_name] = it->second;
  }
  util::write_file_atomic(out_dir / "candidates.json",
                          candidates.dump(2) + "\n");
  for (const auto& label : labels.labels()) {
    const auto it = proposals.find(label.gics_name);
    if (it != proposals.end()) {
      std::cout << label.gics_name << ": " << it->second << "\n";
    }
  }
  std::cout << "wrote " << (out_dir / "rankings.csv").string() << " and "
            << (out_dir / "candidates.json").string() << "\n";
  return 0;
}

int cmd_classify(const FlagValues& flags) {
  RunConfig config = build_config(flags);
  require_corpus(config);
  validate_config(config);
  const Corpus corpus = ingest_corpus(config.corpus_path, config.format,
                                      config.field_map, flags.require_gold);
  const LabelSet labels = resolve_labels(config);
  const auto backend = make_backend(config);

  std::optional<ScoreCache> cache;
  if (!config.cache_path.empty()) cache.emplace(config.cache_path);
  RunCounters counters;
  const auto predictions =
      classify_corpus(corpus, labels, *backend, classify_options(config),
                      cache ? &*cache : nullptr, &counters);

  const auto out_path =
      std::filesystem::path(config.output_dir) / "predictions.jsonl";
  util::write_file_atomic(out_path,
                          serialize_predictions(predictions, labels));
  std::cout << "classified " << counters.records << " records ("
            << counters.pairs_total << " pairs, " << counters.cache_hits
            << " cache hits, " << counters.backend_pairs
            << " backend calls)\n"
            << "wrote " << out_path.string() << "\n";
  return 0;
}

int cmd_evaluate(const FlagValues& flags) {
  const RunConfig config = build_config(flags);
  require_corpus(config);
  const Corpus corpus = ingest_corpus(config.corpus_path, config.format,
                                      config.field_map, true);
  const LabelSet labels = resolve_labels(config);
  const std::filesystem::path predictions_path =
      flags.predictions
          ? std::filesystem::path(*flags.predictions)
          : std::filesystem::path(config.output_dir) / "predictions.jsonl";
  const auto preds = read_predictions(predictions_path);
  const auto cm = evaluate_predictions(corpus, preds, labels);
  const auto report = build_report(cm);
  write_report_artifacts(config.output_dir, report, cm, labels);
  std::cout << render_report_text(report, labels);
  return 0;
}

int cmd_run(const FlagValues& flags) {
  RunConfig config = build_config(flags);
  require_corpus(config);
  const auto result = run_pipeline(config);
  std::cout << result.report_text << "artifacts in " << config.output_dir
            << "\n";
  return 0;
}

int cmd_gen_synthetic(const FlagValues& flags) {
  const RunConfig config = build_config(flags);
  const auto per_class = static_cast<std::size_t>(
      require_non_negative(flags.per_class, "--per-class"));
  if (per_class == 0) {
    throw Error(ErrorCode::InvalidConfig, "--per-class must be >= 1");
  }
  const LabelSet labels = resolve_labels(config);
  const Corpus corpus = generate_synthetic_corpus(labels, per_class, config.seed);
  const auto out_path =
      std::filesystem::path(config.output_dir) / corpus_file_name(config.format);
  write_corpus(out_path, corpus, config.format, config.field_map);
  std::cout << "wrote " << corpus.size() << " records to " << out_path.string()
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-shot company sector classification toolkit"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  FlagValues flags;

  auto* ingest = app.add_subcommand("ingest", "validate and normalize a corpus");
  ingest->add_flag("--require-gold", flags.require_gold,
                   "drop records without a gold sector");
  auto* summary =
      app.add_subcommand("summary", "per-sector record counts");
  auto* enrich = app.add_subcommand(
      "enrich", "rank class terms and propose enriched label names");
  enrich->add_option("--lexicons", flags.lexicons,
                     "directory with stopword/verb/country/abbreviation lists");
  enrich->add_option("--top-k", flags.top_k, "ranked terms per class");
  enrich->add_option("--name-terms", flags.name_terms,
                     "terms joined into each proposed name");
  auto* classify =
      app.add_subcommand("classify", "write predictions for a corpus");
  classify->add_flag("--require-gold", flags.require_gold,
                     "drop records without a gold sector");
  auto* evaluate = app.add_subcommand(
      "evaluate", "score a predictions file against gold labels");
  evaluate->add_option("--predictions", flags.predictions,
                       "predictions JSONL (default: <out>/predictions.jsonl)");
  auto* run =
      app.add_subcommand("run", "classify and evaluate in one pass");
  auto* gen = app.add_subcommand("gen-synthetic",
                                 "generate a seeded synthetic corpus");
  gen->add_option("--per-class", flags.per_class, "records per label");

  for (auto* sub : {ingest, summary, enrich, classify, evaluate, run, gen}) {
    add_shared_flags(sub, flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(flags);
    if (summary->parsed()) return cmd_summary(flags);
    if (enrich->parsed()) return cmd_enrich(flags);
    if (classify->parsed()) return cmd_classify(flags);
    if (evaluate->parsed()) return cmd_evaluate(flags);
    if (run->parsed()) return cmd_run(flags);
    if (gen->parsed()) return cmd_gen_synthetic(flags);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

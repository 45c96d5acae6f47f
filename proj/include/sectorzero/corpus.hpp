#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sectorzero/taxonomy.hpp"

namespace sectorzero {

struct CompanyRecord {
  std::string id;
  std::string name;
  std::string description;
  std::optional<std::string> gold_sector;

  bool operator==(const CompanyRecord&) const = default;
};

struct Corpus {
  std::vector<CompanyRecord> records;
  std::string source;
  std::size_t filtered_count = 0;

  bool empty() const { return records.empty(); }
  std::size_t size() const { return records.size(); }
};

enum class CorpusFormat { Csv, Jsonl };

CorpusFormat corpus_format_from_string(std::string_view s);
const char* corpus_format_name(CorpusFormat format);

// Column names (CSV) or object keys (JSONL) for each record field.
struct FieldMap {
  std::string id = "id";
  std::string name = "name";
  std::string description = "description";
  std::string gics_sector = "gics_sector";
};

// Parses corpus text. Records keep input order. id and description are
// required per row; name and the gold column are optional. With
// require_gold, rows whose gold field is missing or blank are dropped and
// counted in filtered_count; otherwise they are kept with gold_sector
// unset.
Corpus ingest_corpus_text(std::string_view content, CorpusFormat format,
                          const FieldMap& fields, bool require_gold,
                          std::string source);

Corpus ingest_corpus(const std::filesystem::path& path, CorpusFormat format,
                     const FieldMap& fields = {}, bool require_gold = false);

std::string serialize_corpus(const Corpus& corpus, CorpusFormat format,
                             const FieldMap& fields = {});

void write_corpus(const std::filesystem::path& path, const Corpus& corpus,
                  CorpusFormat format, const FieldMap& fields = {});

// counts is aligned with labels.labels(); total counts gold-labeled records.
struct CorpusSummary {
  std::vector<std::size_t> counts;
  std::size_t total = 0;
};

CorpusSummary corpus_summary(const Corpus& corpus, const LabelSet& labels);

std::string render_summary_text(const CorpusSummary& summary,
                                const LabelSet& labels);

}  // namespace sectorzero

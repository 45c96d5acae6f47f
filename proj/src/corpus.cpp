#include "sectorzero/corpus.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "sectorzero/errors.hpp"
#include "sectorzero/util.hpp"

namespace sectorzero {

namespace {

using nlohmann::json;

std::string row_label(std::size_t row) {
  return "row " + std::to_string(row);
}

void push_record(Corpus& corpus, std::unordered_set<std::string>& seen_ids,
                 CompanyRecord rec, bool require_gold, std::size_t row) {
  if (std::string_view(util::trim(rec.id)).empty()) {
    throw Error(ErrorCode::MalformedRecord, row_label(row) + ": empty id");
  }
  if (std::string_view(util::trim(rec.description)).empty()) {
    throw Error(ErrorCode::MalformedRecord,
                row_label(row) + ": empty description");
  }
  if (rec.gold_sector &&
      std::string_view(util::trim(*rec.gold_sector)).empty()) {
    rec.gold_sector.reset();
  }
  if (require_gold && !rec.gold_sector) {
    ++corpus.filtered_count;
    return;
  }
  if (!seen_ids.insert(rec.id).second) {
    throw Error(ErrorCode::DuplicateId,
                row_label(row) + ": duplicate id \"" + rec.id + "\"");
  }
  corpus.records.push_back(std::move(rec));
}

Corpus ingest_csv(std::string_view content, const FieldMap& fields,
                  bool require_gold, std::string source) {
  const auto rows = csv::parse(content);
  if (rows.empty()) {
    throw Error(ErrorCode::MalformedRecord, "missing header row");
  }
  const auto& header = rows.front();
  const auto column = [&](const std::string& name) -> std::optional<std::size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto id_col = column(fields.id);
  const auto name_col = column(fields.name);
  const auto desc_col = column(fields.description);
  const auto gold_col = column(fields.gics_sector);
  if (!id_col) {
    throw Error(ErrorCode::MalformedRecord,
                "header missing column \"" + fields.id + "\"");
  }
  if (!desc_col) {
    throw Error(ErrorCode::MalformedRecord,
                "header missing column \"" + fields.description + "\"");
  }

  Corpus corpus;
  corpus.source = std::move(source);
  std::unordered_set<std::string> seen_ids;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const std::size_t row_no = i + 1;
    if (row.size() != header.size()) {
      throw Error(ErrorCode::MalformedRecord,
                  row_label(row_no) + ": expected " +
                      std::to_string(header.size()) + " fields, got " +
                      std::to_string(row.size()));
    }
    CompanyRecord rec;
    rec.id = row[*id_col];
    if (name_col) rec.name = row[*name_col];
    rec.description = row[*desc_col];
    if (gold_col) rec.gold_sector = row[*gold_col];
    push_record(corpus, seen_ids, std::move(rec), require_gold, row_no);
  }
  return corpus;
}

Corpus ingest_jsonl(std::string_view content, const FieldMap& fields,
                    bool require_gold, std::string source) {
  Corpus corpus;
  corpus.source = std::move(source);
  std::unordered_set<std::string> seen_ids;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    const auto nl = content.find('\n', pos);
    const auto line_end = nl == std::string_view::npos ? content.size() : nl;
    std::string_view line = content.substr(pos, line_end - pos);
    pos = line_end + 1;
    ++line_no;
    if (nl == std::string_view::npos && line.empty()) break;
    line = util::trim(line);
    if (line.empty()) continue;

    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      throw Error(ErrorCode::MalformedRecord,
                  "line " + std::to_string(line_no) + ": not a JSON object");
    }
    const auto get_string = [&](const std::string& key,
                                bool required) -> std::optional<std::string> {
      const auto it = obj.find(key);
      if (it == obj.end() || it->is_null()) {
        if (required) {
          throw Error(ErrorCode::MalformedRecord,
                      "line " + std::to_string(line_no) + ": missing \"" +
                          key + "\"");
        }
        return std::nullopt;
      }
      if (!it->is_string()) {
        throw Error(ErrorCode::MalformedRecord,
                    "line " + std::to_string(line_no) + ": \"" + key +
                        "\" is not a string");
      }
      return it->get<std::string>();
    };
    CompanyRecord rec;
    rec.id = *get_string(fields.id, true);
    rec.name = get_string(fields.name, false).value_or("");
    rec.description = *get_string(fields.description, true);
    rec.gold_sector = get_string(fields.gics_sector, false);
    push_record(corpus, seen_ids, std::move(rec), require_gold, line_no);
  }
  return corpus;
}

}  // namespace

CorpusFormat corpus_format_from_string(std::string_view s) {
  if (s == "csv") return CorpusFormat::Csv;
  if (s == "jsonl") return CorpusFormat::Jsonl;
  throw Error(ErrorCode::InvalidConfig,
              "unknown corpus format \"" + std::string(s) + "\"");
}

const char* corpus_format_name(CorpusFormat format) {
  return format == CorpusFormat::Csv ? "csv" : "jsonl";
}

Corpus ingest_corpus_text(std::string_view content, CorpusFormat format,
                          const FieldMap& fields, bool require_gold,
                          std::string source) {
  if (format == CorpusFormat::Csv) {
    return ingest_csv(content, fields, require_gold, std::move(source));
  }
  return ingest_jsonl(content, fields, require_gold, std::move(source));
}

Corpus ingest_corpus(const std::filesystem::path& path, CorpusFormat format,
                     const FieldMap& fields, bool require_gold) {
  return ingest_corpus_text(util::read_file(path), format, fields,
                            require_gold, path.string());
}

std::string serialize_corpus(const Corpus& corpus, CorpusFormat format,
                             const FieldMap& fields) {
  std::string out;
  if (format == CorpusFormat::Csv) {
    out += csv::join_row(
        {fields.id, fields.name, fields.description, fields.gics_sector});
    for (const auto& rec : corpus.records) {
      out += csv::join_row({rec.id, rec.name, rec.description,
                            rec.gold_sector.value_or("")});
    }
    return out;
  }
  for (const auto& rec : corpus.records) {
    nlohmann::ordered_json obj;
    obj[fields.id] = rec.id;
    obj[fields.name] = rec.name;
    obj[fields.description] = rec.description;
    if (rec.gold_sector) obj[fields.gics_sector] = *rec.gold_sector;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

void write_corpus(const std::filesystem::path& path, const Corpus& corpus,
                  CorpusFormat format, const FieldMap& fields) {
  util::write_file_atomic(path, serialize_corpus(corpus, format, fields));
}

CorpusSummary corpus_summary(const Corpus& corpus, const LabelSet& labels) {
  CorpusSummary summary;
  summary.counts.assign(labels.size(), 0);
  std::unordered_map<std::string_view, std::size_t> index;
  for (const auto& label : labels.labels()) {
    index.emplace(label.gics_name, label.index);
  }
  for (const auto& rec : corpus.records) {
    if (!rec.gold_sector) continue;
    const auto it = index.find(*rec.gold_sector);
    if (it == index.end()) {
      throw Error(ErrorCode::UnknownLabel,
                  "record \"" + rec.id + "\": gold label \"" +
                      *rec.gold_sector + "\" not in label set");
    }
    ++summary.counts[it->second];
    ++summary.total;
  }
  return summary;
}

std::string render_summary_text(const CorpusSummary& summary,
                                const LabelSet& labels) {
  std::size_t width = 5;  // fits "total"
  for (const auto& label : labels.labels()) {
    width = std::max(width, label.gics_name.size());
  }
  std::string out;
  for (const auto& label : labels.labels()) {
    out += label.gics_name;
    out.append(width - label.gics_name.size() + 2, ' ');
    out += std::to_string(summary.counts[label.index]);
    out += '\n';
  }
  out += "total";
  out.append(width - 5 + 2, ' ');
  out += std::to_string(summary.total);
  out += '\n';
  return out;
}

}  // namespace sectorzero

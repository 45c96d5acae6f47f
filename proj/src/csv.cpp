#include "csv.hpp"

namespace sectorzero::csv {

std::vector<std::vector<std::string>> parse(std::string_view content) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;  // distinguishes a blank line from an empty field

  const auto flush_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  const auto flush_record = [&] {
    if (field_started || !field.empty() || !record.empty()) {
      flush_field();
      records.push_back(std::move(record));
      record.clear();
    }
  };

  for (std::size_t i = 0; i < content.size(); ++i) {
    const char c = content[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        field_started = true;  // a comma implies at least two fields
        flush_field();
        field_started = true;
        break;
      case '\r':
        break;
      case '\n':
        flush_record();
        break;
      default:
        field.push_back(c);
        field_started = true;
        break;
    }
  }
  flush_record();
  return records;
}

std::string escape(std::string_view field) {
  const bool needs_quoting =
      field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quoting) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (const char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string join_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += escape(fields[i]);
  }
  out.push_back('\n');
  return out;
}

}  // namespace sectorzero::csv

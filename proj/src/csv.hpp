#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sectorzero::csv {

// Comma-separated, double-quote quoting, quotes escaped by doubling, LF or
// CRLF line ends. Quoted fields may span lines. Blank lines are skipped.
std::vector<std::vector<std::string>> parse(std::string_view content);

// Quotes the field when it contains a comma, quote, or line break.
std::string escape(std::string_view field);

std::string join_row(const std::vector<std::string>& fields);

}  // namespace sectorzero::csv

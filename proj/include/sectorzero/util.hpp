#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace sectorzero::util {

// Reads the whole file; throws Error(IoError) if it can't be opened.
std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temp file, then renames over the target so readers
// never observe a partial file.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

// Shortest decimal string that round-trips the exact double value.
std::string format_double(double value);

// Current wall-clock time as "YYYY-MM-DDTHH:MM:SSZ".
std::string iso8601_utc_now();

std::string_view trim(std::string_view s);

}  // namespace sectorzero::util

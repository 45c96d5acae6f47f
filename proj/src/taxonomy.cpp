#include "sectorzero/taxonomy.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace sectorzero {

namespace {

struct SectorNames {
  const char* gics;
  const char* enriched;
};

// The eleven sectors with their keyword-enriched display variants.
constexpr std::array<SectorNames, 11> kSectors = {{
    {"Energy", "Oil, Natural Gas, Consumable Fuels and Petroleum"},
    {"Materials", "Raw Materials, Mining, Minerals and Metals (Gold, Silver and Copper)"},
    {"Industrials", "Industrials and Transportation"},
    {"Consumer Discretionary", "Non-Essential Goods, Retail and E-Commerce"},
    {"Consumer Staples", "Food, Beverages and Household Products"},
    {"Health Care", "Health Care"},
    {"Financials", "Banking and Lending"},
    {"Information Technology", "Software, Technology and Systems"},
    {"Communication Services",
     "Communications, Telecommunications, Networking, Media and Entertainment"},
    {"Utilities", "Utilities, Energy Distribution and Renewable Energy"},
    {"Real Estate", "Real Estate Properties"},
}};

std::optional<GicsLevel> level_for_length(std::size_t length) {
  switch (length) {
    case 2: return GicsLevel::Sector;
    case 4: return GicsLevel::IndustryGroup;
    case 6: return GicsLevel::Industry;
    case 8: return GicsLevel::SubIndustry;
    default: return std::nullopt;
  }
}

std::size_t digits_for_level(GicsLevel level) {
  switch (level) {
    case GicsLevel::Sector: return 2;
    case GicsLevel::IndustryGroup: return 4;
    case GicsLevel::Industry: return 6;
    case GicsLevel::SubIndustry: return 8;
  }
  return 2;
}

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

const char* gics_level_name(GicsLevel level) {
  switch (level) {
    case GicsLevel::Sector: return "sector";
    case GicsLevel::IndustryGroup: return "industry-group";
    case GicsLevel::Industry: return "industry";
    case GicsLevel::SubIndustry: return "sub-industry";
  }
  return "sector";
}

GicsCode GicsCode::parse(std::string_view text) {
  const std::string_view trimmed = trim_view(text);
  const auto level = level_for_length(trimmed.size());
  if (!level) {
    throw Error(ErrorCode::InvalidCodeLength,
                "code '" + std::string(trimmed) + "' has length " +
                    std::to_string(trimmed.size()) + ", expected 2, 4, 6 or 8");
  }
  for (const char c : trimmed) {
    if (c < '0' || c > '9') {
      throw Error(ErrorCode::InvalidCodeCharacter,
                  "code '" + std::string(trimmed) + "' contains non-digit '" +
                      std::string(1, c) + "'");
    }
  }
  return GicsCode(std::string(trimmed), *level);
}

GicsCode GicsCode::truncated(GicsLevel level) const {
  const std::size_t want = digits_for_level(level);
  if (want > digits_.size()) {
    throw std::invalid_argument("cannot truncate a " + std::string(gics_level_name(level_)) +
                                " code to the narrower " + gics_level_name(level) + " level");
  }
  return GicsCode(digits_.substr(0, want), level);
}

LabelSet::LabelSet(LabelVariant variant, std::vector<ClassLabel> labels)
    : variant_(variant), labels_(std::move(labels)) {
  std::unordered_set<std::string> gics, display;
  for (const auto& label : labels_) {
    if (label.gics_name.empty()) {
      throw Error(ErrorCode::InvalidLabelSet,
                  "label " + std::to_string(label.index) + " has an empty gics_name");
    }
    if (label.display_name.empty()) {
      throw Error(ErrorCode::InvalidLabelSet,
                  "label '" + label.gics_name + "' has an empty display_name");
    }
    if (!gics.insert(label.gics_name).second) {
      throw Error(ErrorCode::InvalidLabelSet, "duplicate gics_name '" + label.gics_name + "'");
    }
    if (!display.insert(label.display_name).second) {
      throw Error(ErrorCode::InvalidLabelSet,
                  "duplicate display_name '" + label.display_name + "'");
    }
  }
}

LabelSet LabelSet::builtin(LabelVariant variant) {
  if (variant == LabelVariant::Custom) {
    throw std::invalid_argument("builtin label sets are Original or Enriched");
  }
  std::vector<ClassLabel> labels;
  labels.reserve(kSectors.size());
  for (std::size_t i = 0; i < kSectors.size(); ++i) {
    const char* display =
        variant == LabelVariant::Original ? kSectors[i].gics : kSectors[i].enriched;
    labels.push_back({i, kSectors[i].gics, display});
  }
  return LabelSet(variant, std::move(labels));
}

LabelSet LabelSet::custom(std::vector<std::pair<std::string, std::string>> names) {
  std::vector<ClassLabel> labels;
  labels.reserve(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    labels.push_back({i, std::move(names[i].first), std::move(names[i].second)});
  }
  return LabelSet(LabelVariant::Custom, std::move(labels));
}

LabelSet LabelSet::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open label-set file '" + path + "'");
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidLabelSet, "label-set file '" + path + "': " + e.what());
  }
  if (!doc.is_array()) {
    throw Error(ErrorCode::InvalidLabelSet,
                "label-set file '" + path + "' must be a JSON array");
  }
  std::vector<std::pair<std::string, std::string>> names;
  names.reserve(doc.size());
  for (const auto& entry : doc) {
    if (!entry.is_object() || !entry.contains("gics_name") || !entry.contains("display_name") ||
        !entry["gics_name"].is_string() || !entry["display_name"].is_string()) {
      throw Error(ErrorCode::InvalidLabelSet,
                  "label-set entries must be {\"gics_name\": str, \"display_name\": str}");
    }
    names.emplace_back(entry["gics_name"].get<std::string>(),
                       entry["display_name"].get<std::string>());
  }
  return custom(std::move(names));
}

std::optional<std::size_t> LabelSet::index_of_gics(std::string_view gics_name) const {
  for (const auto& label : labels_) {
    if (label.gics_name == gics_name) return label.index;
  }
  return std::nullopt;
}

std::optional<std::size_t> LabelSet::index_of_display(std::string_view display_name) const {
  for (const auto& label : labels_) {
    if (label.display_name == display_name) return label.index;
  }
  return std::nullopt;
}

}  // namespace sectorzero

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sectorzero/errors.hpp"

namespace sectorzero {

enum class GicsLevel { Sector, IndustryGroup, Industry, SubIndustry };

const char* gics_level_name(GicsLevel level);

// Hierarchical classification code. The digit count fixes the level:
// 2 digits = sector, 4 = industry group, 6 = industry, 8 = sub-industry.
// Truncating a code yields its ancestors.
class GicsCode {
 public:
  // Trims surrounding whitespace, then validates length and characters.
  static GicsCode parse(std::string_view text);

  const std::string& digits() const { return digits_; }
  GicsLevel level() const { return level_; }

  // Ancestor code at a broader (or equal) level.
  GicsCode truncated(GicsLevel level) const;

  bool operator==(const GicsCode&) const = default;

 private:
  GicsCode(std::string digits, GicsLevel level)
      : digits_(std::move(digits)), level_(level) {}

  std::string digits_;
  GicsLevel level_ = GicsLevel::Sector;
};

enum class LabelVariant { Original, Enriched, Custom };

struct ClassLabel {
  std::size_t index = 0;         // position within the label set
  std::string gics_name;         // canonical sector name
  std::string display_name;      // name actually submitted to the classifier

  bool operator==(const ClassLabel&) const = default;
};

// Ordered set of candidate class labels. The two built-in variants carry the
// eleven sectors; custom sets come from label-set files.
class LabelSet {
 public:
  static LabelSet builtin(LabelVariant variant);  // Original or Enriched

  // Pairs of (gics_name, display_name), order significant.
  static LabelSet custom(std::vector<std::pair<std::string, std::string>> names);

  // JSON array of {"gics_name": ..., "display_name": ...} objects.
  static LabelSet load(const std::string& path);

  const std::vector<ClassLabel>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  const ClassLabel& at(std::size_t index) const { return labels_.at(index); }
  LabelVariant variant() const { return variant_; }

  std::optional<std::size_t> index_of_gics(std::string_view gics_name) const;
  std::optional<std::size_t> index_of_display(std::string_view display_name) const;

  bool operator==(const LabelSet&) const = default;

 private:
  LabelSet(LabelVariant variant, std::vector<ClassLabel> labels);

  LabelVariant variant_ = LabelVariant::Custom;
  std::vector<ClassLabel> labels_;
};

}  // namespace sectorzero

#include <doctest.h>

#include "sectorzero/taxonomy.hpp"
#include "support/error_check.hpp"
#include "support/temp_dir.hpp"

using namespace sectorzero;
using testsupport::error_code_of;

TEST_SUITE("taxonomy") {

TEST_CASE("code length fixes the level") {
  CHECK(GicsCode::parse("10").level() == GicsLevel::Sector);
  CHECK(GicsCode::parse("1010").level() == GicsLevel::IndustryGroup);
  CHECK(GicsCode::parse("101010").level() == GicsLevel::Industry);
  CHECK(GicsCode::parse("10101010").level() == GicsLevel::SubIndustry);
  CHECK(GicsCode::parse("45102010").digits() == "45102010");
}

TEST_CASE("parse trims surrounding whitespace") {
  CHECK(GicsCode::parse("  3520 \n").digits() == "3520");
  CHECK(GicsCode::parse("\t60\t") == GicsCode::parse("60"));
}

TEST_CASE("parse rejects bad lengths") {
  for (const char* text : {"", "1", "123", "12345", "1234567", "123456789"}) {
    CHECK(error_code_of([&] { GicsCode::parse(text); }) ==
          ErrorCode::InvalidCodeLength);
  }
}

TEST_CASE("parse rejects non-digits") {
  CHECK(error_code_of([] { GicsCode::parse("1a"); }) ==
        ErrorCode::InvalidCodeCharacter);
  CHECK(error_code_of([] { GicsCode::parse("10 20"); }) ==
        ErrorCode::InvalidCodeLength);  // inner space, 5 chars after trim
  CHECK(error_code_of([] { GicsCode::parse("10.0"); }) ==
        ErrorCode::InvalidCodeCharacter);
}

TEST_CASE("truncation walks up the hierarchy") {
  const auto code = GicsCode::parse("45102010");
  CHECK(code.truncated(GicsLevel::Sector).digits() == "45");
  CHECK(code.truncated(GicsLevel::IndustryGroup).digits() == "4510");
  CHECK(code.truncated(GicsLevel::Industry).digits() == "451020");
  CHECK(code.truncated(GicsLevel::SubIndustry) == code);
}

TEST_CASE("truncation refuses to descend") {
  const auto sector = GicsCode::parse("45");
  CHECK_THROWS_AS((void)sector.truncated(GicsLevel::Industry),
                  std::invalid_argument);
}

TEST_CASE("built-in label sets carry the eleven sectors") {
  const auto original = LabelSet::builtin(LabelVariant::Original);
  const auto enriched = LabelSet::builtin(LabelVariant::Enriched);
  REQUIRE(original.size() == 11);
  REQUIRE(enriched.size() == 11);
  for (std::size_t i = 0; i < 11; ++i) {
    CHECK(original.at(i).gics_name == enriched.at(i).gics_name);
    // Original display names are the sector names themselves.
    CHECK(original.at(i).display_name == original.at(i).gics_name);
    CHECK(original.at(i).index == i);
  }
}

TEST_CASE("enriched names substitute keyword-rich phrasings") {
  const auto enriched = LabelSet::builtin(LabelVariant::Enriched);
  const auto idx = enriched.index_of_gics("Energy");
  REQUIRE(idx.has_value());
  CHECK(enriched.at(*idx).display_name ==
        "Oil, Natural Gas, Consumable Fuels and Petroleum");
  const auto fin = enriched.index_of_gics("Financials");
  REQUIRE(fin.has_value());
  CHECK(enriched.at(*fin).display_name == "Banking and Lending");
  // Health Care reads well enough that its enriched form is unchanged.
  const auto health = enriched.index_of_gics("Health Care");
  REQUIRE(health.has_value());
  CHECK(enriched.at(*health).display_name == "Health Care");
}

TEST_CASE("display-name lookup works on the enriched set") {
  const auto enriched = LabelSet::builtin(LabelVariant::Enriched);
  const auto idx = enriched.index_of_display("Banking and Lending");
  REQUIRE(idx.has_value());
  CHECK(enriched.at(*idx).gics_name == "Financials");
  CHECK(!enriched.index_of_display("No Such Label").has_value());
}

TEST_CASE("custom sets preserve order and validate uniqueness") {
  const auto set = LabelSet::custom({{"Energy", "Fuel"}, {"Utilities", "Power"}});
  CHECK(set.variant() == LabelVariant::Custom);
  CHECK(set.at(0).gics_name == "Energy");
  CHECK(set.at(1).display_name == "Power");

  // An empty custom set is constructible; classification rejects it later.
  CHECK(LabelSet::custom({}).empty());
  CHECK(error_code_of([] {
          LabelSet::custom({{"Energy", "A"}, {"Energy", "B"}});
        }) == ErrorCode::InvalidLabelSet);
  CHECK(error_code_of([] {
          LabelSet::custom({{"Energy", "Same"}, {"Utilities", "Same"}});
        }) == ErrorCode::InvalidLabelSet);
}

TEST_CASE("label-set files round-trip through load") {
  testsupport::TempDir dir;
  const auto path = dir.path() / "labels.json";
  testsupport::write_text(path,
                          R"([{"gics_name": "Energy", "display_name": "Fuel"},
 {"gics_name": "Utilities", "display_name": "Power"}])");
  const auto set = LabelSet::load(path.string());
  REQUIRE(set.size() == 2);
  CHECK(set.at(0).display_name == "Fuel");
  CHECK(set.at(1).gics_name == "Utilities");
}

TEST_CASE("label-set files reject malformed content") {
  testsupport::TempDir dir;
  const auto path = dir.path() / "labels.json";

  testsupport::write_text(path, R"({"gics_name": "Energy"})");
  CHECK(error_code_of([&] { LabelSet::load(path.string()); }) ==
        ErrorCode::InvalidLabelSet);

  testsupport::write_text(path, R"([{"gics_name": "Energy"}])");
  CHECK(error_code_of([&] { LabelSet::load(path.string()); }) ==
        ErrorCode::InvalidLabelSet);

  testsupport::write_text(path, "not json");
  CHECK(error_code_of([&] { LabelSet::load(path.string()); }) ==
        ErrorCode::InvalidLabelSet);

  CHECK(error_code_of([&] { LabelSet::load((dir.path() / "nope.json").string()); }) ==
        ErrorCode::IoError);
}

}  // TEST_SUITE

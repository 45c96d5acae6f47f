#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "sectorzero/enrich.hpp"
#include "sectorzero/errors.hpp"
#include "support/error_check.hpp"
#include "support/oracles.hpp"

using namespace sectorzero;
using testsupport::error_code_of;

namespace {

// oil in both docs, gas only in the first.
const std::vector<TokenList> kTwoDocs = {{"oil", "gas", "oil"}, {"oil"}};

std::vector<TokenList> random_docs(std::mt19937_64& rng, std::size_t count) {
  static const std::vector<std::string> pool = {
      "oil", "gas", "bank", "loan", "gold", "ore", "retail", "food",
      "care", "software", "media", "power", "estate", "a", "b"};
  std::vector<TokenList> docs(count);
  for (auto& doc : docs) {
    const std::size_t len = 1 + rng() % 12;
    for (std::size_t i = 0; i < len; ++i) {
      doc.push_back(pool[rng() % pool.size()]);
    }
  }
  return docs;
}

}  // namespace

TEST_SUITE("enrich") {

TEST_CASE("fit_tfidf counts documents, not occurrences") {
  const auto stats = fit_tfidf(kTwoDocs);
  CHECK(stats.doc_count == 2);
  CHECK(stats.doc_freq.at("oil") == 2);  // twice in doc 0, once in doc 1
  CHECK(stats.doc_freq.at("gas") == 1);
  CHECK(stats.vocabulary == std::vector<std::string>{"gas", "oil"});
}

TEST_CASE("idf follows the smoothed formula") {
  const auto stats = fit_tfidf(kTwoDocs);
  // idf = ln((1+N)/(1+df)) + 1
  CHECK(stats.idf.at("oil") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(stats.idf.at("gas") ==
        doctest::Approx(std::log(3.0 / 2.0) + 1.0).epsilon(1e-12));
}

TEST_CASE("idf of a single-document corpus is 1 everywhere") {
  const auto stats = fit_tfidf({{"alpha", "beta", "alpha"}});
  for (const auto& term : stats.vocabulary) {
    CHECK(stats.idf.at(term) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("idf never increases as document frequency grows") {
  std::mt19937_64 rng(11);
  const auto stats = fit_tfidf(random_docs(rng, 40));
  for (const auto& a : stats.vocabulary) {
    for (const auto& b : stats.vocabulary) {
      if (stats.doc_freq.at(a) < stats.doc_freq.at(b)) {
        CHECK(stats.idf.at(a) > stats.idf.at(b));
      }
    }
  }
}

TEST_CASE("fit_tfidf rejects an empty corpus") {
  CHECK(error_code_of([] { fit_tfidf({}); }) == ErrorCode::EmptyCorpus);
}

TEST_CASE("rank_class_terms scores count times idf") {
  const auto stats = fit_tfidf(kTwoDocs);
  DocsByClass by_class;
  by_class["Energy"] = {{"oil", "gas", "oil"}};
  const auto ranking = rank_class_terms(stats, by_class, "Energy", 10);
  CHECK(ranking.gics_name == "Energy");
  REQUIRE(ranking.ranked_terms.size() == 2);
  CHECK(ranking.ranked_terms[0].first == "oil");
  CHECK(ranking.ranked_terms[0].second == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ranking.ranked_terms[1].first == "gas");
  CHECK(ranking.ranked_terms[1].second ==
        doctest::Approx(std::log(1.5) + 1.0).epsilon(1e-12));
}

TEST_CASE("k caps the ranking length") {
  const auto stats = fit_tfidf(kTwoDocs);
  DocsByClass by_class;
  by_class["Energy"] = {{"oil", "gas"}};
  CHECK(rank_class_terms(stats, by_class, "Energy", 1).ranked_terms.size() == 1);
  CHECK(rank_class_terms(stats, by_class, "Energy", 99).ranked_terms.size() ==
        2);
  CHECK(rank_class_terms(stats, by_class, "Energy", 0).ranked_terms.empty());
}

TEST_CASE("score ties break toward the lexicographically smaller term") {
  const auto stats = fit_tfidf({{"zeta", "alpha", "mid"}});  // all idf 1
  DocsByClass by_class;
  by_class["C"] = {{"zeta", "alpha", "mid"}};
  const auto ranking = rank_class_terms(stats, by_class, "C", 10);
  REQUIRE(ranking.ranked_terms.size() == 3);
  CHECK(ranking.ranked_terms[0].first == "alpha");
  CHECK(ranking.ranked_terms[1].first == "mid");
  CHECK(ranking.ranked_terms[2].first == "zeta");
}

TEST_CASE("terms outside the fitted vocabulary are skipped") {
  const auto stats = fit_tfidf(kTwoDocs);
  DocsByClass by_class;
  by_class["Energy"] = {{"oil", "unseen"}};
  const auto ranking = rank_class_terms(stats, by_class, "Energy", 10);
  REQUIRE(ranking.ranked_terms.size() == 1);
  CHECK(ranking.ranked_terms[0].first == "oil");
}

TEST_CASE("rank_class_terms requires a known class") {
  const auto stats = fit_tfidf(kTwoDocs);
  CHECK(error_code_of([&] {
          rank_class_terms(stats, {}, "Energy", 5);
        }) == ErrorCode::UnknownLabel);
}

TEST_CASE("rank_all_classes equals a class-by-class loop") {
  std::mt19937_64 rng(5);
  const auto docs = random_docs(rng, 30);
  const auto stats = fit_tfidf(docs);
  DocsByClass by_class;
  const char* names[3] = {"A", "B", "C"};
  for (std::size_t i = 0; i < docs.size(); ++i) {
    by_class[names[i % 3]].push_back(docs[i]);
  }
  const auto rankings = rank_all_classes(stats, by_class, 8);
  REQUIRE(rankings.size() == 3);
  std::size_t at = 0;
  for (const auto& [name, _] : by_class) {
    const auto solo = rank_class_terms(stats, by_class, name, 8);
    CHECK(rankings[at].gics_name == name);
    CHECK(rankings[at].ranked_terms == solo.ranked_terms);
    ++at;
  }
}

TEST_CASE("rankings agree with an independent recount") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto docs = random_docs(rng, 2 + rng() % 20);
    const auto stats = fit_tfidf(docs);
    DocsByClass by_class;
    std::vector<TokenList> class_docs;
    for (std::size_t i = 0; i < docs.size(); i += 2) {
      class_docs.push_back(docs[i]);
    }
    by_class["X"] = class_docs;
    const std::size_t k = 1 + rng() % 10;
    const auto got = rank_class_terms(stats, by_class, "X", k).ranked_terms;
    const auto want = testsupport::oracle_rank_terms(docs, class_docs, k);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].first == want[i].first);
      CHECK(got[i].second == want[i].second);  // bitwise equal
    }
  }
}

TEST_CASE("adding documents to a class never invalidates frozen stats") {
  // Rankings read idf from the fitted stats only, so a class may gain
  // documents after fitting without changing any other class's scores.
  std::mt19937_64 rng(42);
  const auto docs = random_docs(rng, 20);
  const auto stats = fit_tfidf(docs);
  DocsByClass by_class;
  by_class["A"] = {docs[0], docs[1]};
  by_class["B"] = {docs[2]};
  const auto before = rank_class_terms(stats, by_class, "A", 10);
  by_class["B"].push_back(docs[3]);
  by_class["B"].push_back({"brandnew"});
  const auto after = rank_class_terms(stats, by_class, "A", 10);
  CHECK(before.ranked_terms == after.ranked_terms);
}

TEST_CASE("proposals title-case and join the top terms") {
  std::vector<TermRanking> rankings;
  rankings.push_back({"Energy",
                      {{"oil", 9.0}, {"gas", 5.0}, {"fuels", 2.0}, {"rig", 1.0}}});
  rankings.push_back({"Financials", {{"banking", 4.0}}});
  const auto proposals = propose_enriched_labels(rankings, 3);
  CHECK(proposals.at("Energy") == "Oil, Gas, Fuels");
  CHECK(proposals.at("Financials") == "Banking");
}

TEST_CASE("proposal edge cases") {
  std::vector<TermRanking> rankings;
  rankings.push_back({"C", {{"alpha", 2.0}, {"beta", 1.0}}});
  CHECK(propose_enriched_labels(rankings, 1).at("C") == "Alpha");
  CHECK(propose_enriched_labels(rankings, 99).at("C") == "Alpha, Beta");
  rankings.push_back({"Empty", {}});
  CHECK(error_code_of([&] { propose_enriched_labels(rankings, 2); }) ==
        ErrorCode::EmptyRanking);
}

TEST_CASE("rankings export as csv with full-precision scores") {
  std::vector<TermRanking> rankings;
  rankings.push_back({"Energy", {{"oil", 2.0}, {"gas", 1.5}}});
  const auto text = rankings_to_csv(rankings);
  CHECK(text ==
        "gics_name,rank,term,score\n"
        "Energy,1,oil,2\n"
        "Energy,2,gas,1.5\n");
}

}  // TEST_SUITE

// Serial-vs-parallel comparison for the two kernels that shard work:
// corpus classification (pair scoring) and per-class term ranking.

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "sectorzero/enrich.hpp"
#include "sectorzero/nli.hpp"
#include "sectorzero/synthetic.hpp"
#include "sectorzero/taxonomy.hpp"
#include "sectorzero/text.hpp"
#include "sectorzero/zeroshot.hpp"

namespace {

using namespace sectorzero;

Corpus bench_corpus(std::size_t per_class) {
  const auto labels = LabelSet::builtin(LabelVariant::Enriched);
  return generate_synthetic_corpus(labels, per_class, 1);
}

ClassifyOptions options_with_parallelism(std::size_t parallelism) {
  ClassifyOptions options;
  options.batch_size = 16;
  options.parallelism = parallelism;
  return options;
}

void BM_ClassifySerial(benchmark::State& state) {
  const auto labels = LabelSet::builtin(LabelVariant::Enriched);
  const auto corpus = bench_corpus(static_cast<std::size_t>(state.range(0)));
  MockNliBackend backend("bench-model", "This example is {}.");
  const auto options = options_with_parallelism(1);
  for (auto _ : state) {
    auto predictions = classify_corpus_serial(corpus, labels, backend, options);
    benchmark::DoNotOptimize(predictions);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(corpus.size()));
}

void BM_ClassifyParallel(benchmark::State& state) {
  const auto labels = LabelSet::builtin(LabelVariant::Enriched);
  const auto corpus = bench_corpus(static_cast<std::size_t>(state.range(0)));
  MockNliBackend backend("bench-model", "This example is {}.");
  const auto options =
      options_with_parallelism(static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    auto predictions = classify_corpus(corpus, labels, backend, options);
    benchmark::DoNotOptimize(predictions);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(corpus.size()));
}

struct RankingFixture {
  std::vector<TokenList> docs;
  DocsByClass by_class;
  TfidfStats stats;
};

RankingFixture ranking_fixture(std::size_t docs_per_class) {
  RankingFixture fixture;
  const auto labels = LabelSet::builtin(LabelVariant::Enriched);
  const auto corpus = generate_synthetic_corpus(labels, docs_per_class, 2);
  for (const auto& record : corpus.records) {
    auto tokens = tokenize(record.description);
    fixture.by_class[*record.gold_sector].push_back(tokens);
    fixture.docs.push_back(std::move(tokens));
  }
  fixture.stats = fit_tfidf(fixture.docs);
  return fixture;
}

void BM_RankPerClassLoop(benchmark::State& state) {
  const auto fixture = ranking_fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    std::vector<TermRanking> rankings;
    for (const auto& [class_name, class_docs] : fixture.by_class) {
      rankings.push_back(
          rank_class_terms(fixture.stats, fixture.by_class, class_name, 30));
    }
    benchmark::DoNotOptimize(rankings);
  }
}

void BM_RankAllClasses(benchmark::State& state) {
  const auto fixture = ranking_fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto rankings = rank_all_classes(fixture.stats, fixture.by_class, 30);
    benchmark::DoNotOptimize(rankings);
  }
}

}  // namespace

BENCHMARK(BM_ClassifySerial)->Arg(4)->Arg(16);
BENCHMARK(BM_ClassifyParallel)->Args({4, 1})->Args({4, 4})->Args({16, 4});
BENCHMARK(BM_RankPerClassLoop)->Arg(20)->Arg(100);
BENCHMARK(BM_RankAllClasses)->Arg(20)->Arg(100);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "mgcat/analyze.hpp"
#include "mgcat/lexicon.hpp"
#include "mgcat/reduce.hpp"
#include "mgcat/translate.hpp"

using namespace mgcat;

namespace {

const std::vector<std::string> kSentence{"the", "children", "ate", "a", "pizza"};

const Lexicon& pizza() {
  static const Lexicon lex = load_lexicon(std::string(MGCAT_DATA_DIR) + "/pizza.lex");
  return lex;
}

void BM_MgDerive(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mg::mg_derive(pizza().mg, kSentence, 100));
}
BENCHMARK(BM_MgDerive);

void BM_CmgDerive(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cmg::cmg_derive(pizza().cmg, kSentence, 100));
}
BENCHMARK(BM_CmgDerive);

void BM_Analyze(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(analyze(pizza(), kSentence));
}
BENCHMARK(BM_Analyze);

// Internalized sentence term; two quantifiers give a small reduction graph.
void BM_NormalForms(benchmark::State& state) {
  auto term = analyze(pizza(), kSentence)[0].internalized;
  for (auto _ : state) benchmark::DoNotOptimize(sem::normal_forms(term));
}
BENCHMARK(BM_NormalForms);

void BM_Generate(benchmark::State& state) {
  auto words = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mg::mg_generate(pizza().mg, words, 100));
    benchmark::DoNotOptimize(cmg::cmg_generate(pizza().cmg, words, 100));
  }
}
BENCHMARK(BM_Generate)->DenseRange(3, 7, 2);

void BM_CheckEquivalence(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(translate::check_equivalence(pizza().mg, pizza().cmg, 6, 100));
}
BENCHMARK(BM_CheckEquivalence);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "mapcover/certificates.hpp"
#include "mapcover/ends.hpp"
#include "mapcover/minimal_cover.hpp"
#include "mapcover/monodromy.hpp"
#include "mapcover/tilings.hpp"
#include "mapcover/word.hpp"

using namespace mapcover;

static void BM_evaluate(benchmark::State& state) {
  MonodromyContext ctx(build_tiling("3.6.3.6"));
  Word w = identification_word_a();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ctx.evaluate(w));
  }
}

static void BM_compose(benchmark::State& state) {
  MonodromyContext ctx(build_tiling("3.6.3.6"));
  MonElement a = ctx.evaluate(Word::parse("0102"));
  MonElement b = ctx.evaluate(Word::parse("1210"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ctx.compose(a, b));
  }
}

static void BM_patch(benchmark::State& state) {
  MonodromyContext ctx(build_tiling("3.6.3.6"));
  const int radius = static_cast<int>(state.range(0));
  int64_t elements = 0;
  for (auto _ : state) {
    CoverPatch patch = cover_patch(ctx, radius, true);
    elements = static_cast<int64_t>(patch.size());
    benchmark::DoNotOptimize(patch);
  }
  state.counters["elements"] = static_cast<double>(elements);
}

static void BM_probe(benchmark::State& state) {
  HyperbolicFlagGraph g(6, 4);
  const int32_t R = static_cast<int32_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ends_probe(g, R / 3, R));
  }
}

BENCHMARK(BM_evaluate);
BENCHMARK(BM_compose);
BENCHMARK(BM_patch)->Arg(8)->Arg(16)->Arg(24);
BENCHMARK(BM_probe)->Arg(6)->Arg(12)->Arg(18);
BENCHMARK_MAIN();

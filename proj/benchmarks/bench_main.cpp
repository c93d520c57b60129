#include <benchmark/benchmark.h>

#include "cvwalk/brownian.hpp"
#include "cvwalk/exhaustive.hpp"
#include "cvwalk/transform.hpp"

using namespace cvw;

static void BM_Transform(benchmark::State& state) {
  const auto p = sample_srw(static_cast<std::size_t>(state.range(0)), {1, 0});
  for (auto _ : state) benchmark::DoNotOptimize(transform(p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Transform)->RangeMultiplier(8)->Range(64, 1 << 18);

static void BM_TransformBlockForm(benchmark::State& state) {
  const auto p = sample_srw(static_cast<std::size_t>(state.range(0)), {1, 0});
  for (auto _ : state) benchmark::DoNotOptimize(transform_block_form(p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TransformBlockForm)->RangeMultiplier(8)->Range(64, 1 << 18);

static void BM_IteratePrefix(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = sample_srw(2 * n, {2, 0});
  for (auto _ : state) benchmark::DoNotOptimize(iterate_prefix(p, n, n));
}
BENCHMARK(BM_IteratePrefix)->Arg(256)->Arg(1024)->Arg(4096);

static void BM_EncodeDecode(benchmark::State& state) {
  const auto p = sample_srw(static_cast<std::size_t>(state.range(0)), {3, 0});
  for (auto _ : state) benchmark::DoNotOptimize(decode(encode(p)));
}
BENCHMARK(BM_EncodeDecode)->Arg(100)->Arg(1000)->Arg(2000);

static void BM_SampleBrownian(benchmark::State& state) {
  std::uint64_t r = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_brownian(1.0, 0x1p-16, {4, r++}));
  state.SetItemsProcessed(state.iterations() * (1 << 16));
}
BENCHMARK(BM_SampleBrownian);

static void BM_Embed(benchmark::State& state) {
  const auto b = sample_brownian(2.0, 0x1p-18, {5, 0});
  const bool bridge = state.range(0) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bridge ? embed_walk(b, 1024.0, {6, 0}) : embed_walk(b, 1024.0));
  }
}
BENCHMARK(BM_Embed)->Arg(0)->Arg(1);

static void BM_ExhaustiveCheck(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_measure_preserving(n));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_ExhaustiveCheck)->Arg(12)->Arg(16);

static void BM_Independence(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(check_independence(14, 6));
}
BENCHMARK(BM_Independence);
BENCHMARK_MAIN();

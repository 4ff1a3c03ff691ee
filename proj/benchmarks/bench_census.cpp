#include <benchmark/benchmark.h>

#include "symsq/census.hpp"

using namespace symsq;

static void BM_DiagonalFormula(benchmark::State& state) {
  const double B = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_diagonal(B, Method::Formula).count);
}
BENCHMARK(BM_DiagonalFormula)->Arg(10000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_DiagonalBrute(benchmark::State& state) {
  const double B = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_diagonal(B, Method::Brute, {1, 1}).count);
}
BENCHMARK(BM_DiagonalBrute)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_SplitFormula(benchmark::State& state) {
  const double B = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_split_nondiagonal(B).count);
}
BENCHMARK(BM_SplitFormula)->RangeMultiplier(16)->Range(1 << 10, 1 << 20)->Unit(benchmark::kMillisecond);

static void BM_Nonsplit(benchmark::State& state) {
  const double B = static_cast<double>(state.range(0));
  const HeightMode mode = state.range(1) ? HeightMode::Exact : HeightMode::Proxy;
  for (auto _ : state) benchmark::DoNotOptimize(count_nonsplit(B, mode, {1, 1}).count);
}
BENCHMARK(BM_Nonsplit)->ArgsProduct({{1000, 10000, 100000}, {0, 1}})->Unit(benchmark::kMillisecond);

static void BM_SetS(benchmark::State& state) {
  const double B = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_set(SetId::S, B, std::nullopt, {1, 1}).count);
}
BENCHMARK(BM_SetS)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

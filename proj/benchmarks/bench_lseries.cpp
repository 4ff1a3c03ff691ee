#include <benchmark/benchmark.h>

#include "symsq/lseries.hpp"
#include "symsq/quadfield.hpp"

using namespace symsq;

static void BM_FTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(F_table(state.range(0)).values.data());
}
BENCHMARK(BM_FTable)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_GTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(G_table(state.range(1), state.range(0)).values.data());
}
BENCHMARK(BM_GTable)->ArgsProduct({{100000, 1000000}, {2, 7}})->Unit(benchmark::kMillisecond);

static void BM_EulerProduct(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(euler_product_trivial(2, 2.0, state.range(0)));
}
BENCHMARK(BM_EulerProduct)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_KroneckerL1(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kronecker_L1(-163, state.range(0)).value);
}
BENCHMARK(BM_KroneckerL1)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_ClassNumber(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(class_number_imaginary(-state.range(0)));
}
BENCHMARK(BM_ClassNumber)->Arg(9987)->Arg(1000003)->Unit(benchmark::kMicrosecond);

static void BM_PolyaVinogradov(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(polya_vinogradov_check(state.range(0), 100000).max_partial);
}
BENCHMARK(BM_PolyaVinogradov)->Arg(997)->Arg(9973)->Unit(benchmark::kMicrosecond);

static void BM_AyoubSum(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ayoub_sum(state.range(0), 1));
}
BENCHMARK(BM_AyoubSum)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

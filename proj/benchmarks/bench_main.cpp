#include <benchmark/benchmark.h>

#include "dyadic/covering.hpp"
#include "dyadic/random.hpp"
#include "dyadic/triform.hpp"
#include "dyadic/wavelets.hpp"

using namespace dyadic;

static void BM_Fwht(benchmark::State& state) {
  Rng rng(1);
  const GridFunction1D f = rng.uniform_function_1d(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fwht(f));
  state.SetComplexityN(static_cast<std::int64_t>(f.size()));
}
BENCHMARK(BM_Fwht)->DenseRange(8, 20, 4)->Complexity(benchmark::oNLogN);

static void BM_LambdaDirect(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  Rng rng(2);
  const GridFunction2D f0 = rng.uniform_function_2d(K), f1 = rng.uniform_function_2d(K), f2 = rng.uniform_function_2d(K);
  const EpsilonField eps = EpsilonField::random(K, rng);
  for (auto _ : state) benchmark::DoNotOptimize(lambda_direct(f0, f1, f2, eps));
}
BENCHMARK(BM_LambdaDirect)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_LambdaBitileSum(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  Rng rng(3);
  const GridFunction2D f0 = rng.uniform_function_2d(K), f1 = rng.uniform_function_2d(K), f2 = rng.uniform_function_2d(K);
  const EpsilonField eps = EpsilonField::random(K, rng);
  for (auto _ : state) benchmark::DoNotOptimize(lambda_bitile_sum(f0, f1, f2, eps));
}
BENCHMARK(BM_LambdaBitileSum)->DenseRange(4, 7, 1)->Unit(benchmark::kMillisecond);

static void BM_GreedyCover(benchmark::State& state) {
  Rng rng(4);
  std::vector<Parallelogram> rr;
  for (int k = 0; k < state.range(0); ++k) rr.push_back(random_parallelogram(rng, ParallelogramEnsemble{}));
  for (auto _ : state) benchmark::DoNotOptimize(greedy_cover(rr, 8));
}
BENCHMARK(BM_GreedyCover)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

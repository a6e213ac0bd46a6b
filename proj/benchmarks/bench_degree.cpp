#include <benchmark/benchmark.h>

#include "fano/bounds.hpp"
#include "fano/chow.hpp"
#include "fano/search.hpp"
#include "fano/tower.hpp"

using namespace fano;

static void BM_ClosedFormDegree(benchmark::State& state) {
  const TowerSpec spec = build_prop1(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(degree(spec));
}
BENCHMARK(BM_ClosedFormDegree)->Arg(10)->Arg(100)->Arg(1000);

static void BM_OracleDegree(benchmark::State& state) {
  const TowerSpec spec = build_prop1(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(chow::anticanonical_power(spec));
}
BENCHMARK(BM_OracleDegree)->Arg(6)->Arg(8)->Arg(10);

static void BM_IntervalEval(benchmark::State& state) {
  const BoundExpr bound = prop1_bound();
  const Assignment a{{"n", ExactInt(500)}};
  for (auto _ : state) benchmark::DoNotOptimize(interval_eval(bound, a, state.range(0)));
}
BENCHMARK(BM_IntervalEval)->Arg(128)->Arg(1024)->Arg(8192);

static void BM_CheckProp1(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(check_prop1(state.range(0)));
}
BENCHMARK(BM_CheckProp1)->Arg(100)->Arg(1000);

static void BM_BestR(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(best_r(state.range(0)));
}
BENCHMARK(BM_BestR)->Arg(100)->Arg(300);
BENCHMARK_MAIN();

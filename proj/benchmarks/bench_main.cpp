#include <benchmark/benchmark.h>

#include "degseq/asymptotic.hpp"
#include "degseq/exact.hpp"
#include "degseq/iteration.hpp"
#include "degseq/neighborhood.hpp"
#include "degseq/random_models.hpp"

using namespace degseq;

static DegreeSequence regular(int n, int k) {
  return DegreeSequence(GraphClass::bipartite(n, n), std::vector<int>(n, k), std::vector<int>(n, k));
}

static void BM_CountRegular(benchmark::State& st) {
  ExactEngine eng;
  auto d = regular(static_cast<int>(st.range(0)), static_cast<int>(st.range(0) / 3));
  for (auto _ : st) benchmark::DoNotOptimize(eng.count(d));
}
BENCHMARK(BM_CountRegular)->Arg(6)->Arg(9)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_CountForced(benchmark::State& st) {
  ExactEngine eng;
  auto d = regular(8, 3);
  for (auto _ : st) benchmark::DoNotOptimize(eng.count(d, {}, {{1, 9}, {2, 10}}));
}
BENCHMARK(BM_CountForced)->Unit(benchmark::kMicrosecond);

static void BM_EstimateLogCount(benchmark::State& st) {
  auto d = regular(static_cast<int>(st.range(0)), 5);
  for (auto _ : st) benchmark::DoNotOptimize(estimate_log_count(d));
}
BENCHMARK(BM_EstimateLogCount)->Arg(20)->Arg(200);

static void BM_IterateProduct(benchmark::State& st) {
  auto c = regular(4, 3);
  auto dom = downward_domain(c, 24);
  IterationOptions o;
  o.max_iter = 200;
  for (auto _ : st) benchmark::DoNotOptimize(iterate_fixpoint<double>(ProductFormSource(c.graph_class()), dom, o));
}
BENCHMARK(BM_IterateProduct)->Unit(benchmark::kMillisecond);

static void BM_Sample(benchmark::State& st) {
  auto spec = ModelSpec::make(static_cast<ModelKind>(st.range(0)), 20, 20, 100);
  for (auto _ : st) benchmark::DoNotOptimize(sample(spec, 1000, 1));
}
BENCHMARK(BM_Sample)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

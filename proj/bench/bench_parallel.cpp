// Serial reference vs OpenMP paths. Thread count comes from OMP_NUM_THREADS.
#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "lineext/catalog.hpp"
#include "lineext/extend.hpp"
#include "lineext/moduli.hpp"

using namespace lineext;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_Census(benchmark::State& state) {
  const int k = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_census(k, ten3_catalog(), exec_of(state)).total);
  state.SetLabel(std::string(state.range(0) ? "parallel" : "serial") + " k=" + std::to_string(k));
}
BENCHMARK(BM_Census)->ArgsProduct({{0, 1}, {3, 4}})->Unit(benchmark::kMillisecond);

void BM_ClassifyBatch(benchmark::State& state) {
  std::vector<std::string> names;
  for (const auto& m : enumerate_census(4, ten3_catalog()).members) names.push_back(m.name);
  for (auto _ : state) benchmark::DoNotOptimize(classify_batch(names, {}, exec_of(state)).size());
  state.SetLabel(std::string(state.range(0) ? "parallel" : "serial") + ", " + std::to_string(names.size()) +
                 " arrangements");
}
BENCHMARK(BM_ClassifyBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();

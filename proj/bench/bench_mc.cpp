// Serial reference against the OpenMP chunk driver on the same workloads.
// Both paths produce bit-identical estimates; only wall time differs.

#include "altzeta/ensembles.hpp"
#include "altzeta/sampling.hpp"

#include <benchmark/benchmark.h>

using namespace altzeta;

namespace {

SamplerConfig config(bool parallel) {
  SamplerConfig c;
  c.parallel = parallel;
  return c;
}

void BM_eta_mc(benchmark::State& state) {
  const bool parallel = state.range(0) != 0;
  const int N = static_cast<int>(state.range(1));
  const long n = 200000;
  for (auto _ : state) benchmark::DoNotOptimize(eta_mc(1.0, N, config(parallel), n).mean);
  state.SetItemsProcessed(state.iterations() * n);
  state.SetLabel(parallel ? "parallel" : "serial");
}
BENCHMARK(BM_eta_mc)->ArgsProduct({{0, 1}, {4, 16}})->Unit(benchmark::kMillisecond);

void BM_exp_moment_mc(benchmark::State& state) {
  const bool parallel = state.range(0) != 0;
  const long n = 2000000;
  const OrderedGrid u = OrderedGrid::squares(8);
  for (auto _ : state) benchmark::DoNotOptimize(exp_moment_mc(u, 1.0, config(parallel), n).mean);
  state.SetItemsProcessed(state.iterations() * n);
  state.SetLabel(parallel ? "parallel" : "serial");
}
BENCHMARK(BM_exp_moment_mc)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_avg_ratio_mc(benchmark::State& state) {
  const bool parallel = state.range(0) != 0;
  const long n = 50000;
  const EnsembleSpec spec(Jacobi{3.0, 2.0}, 4);
  for (auto _ : state) benchmark::DoNotOptimize(avg_ratio_mc(spec, 1.0, config(parallel), n).joint.mean);
  state.SetItemsProcessed(state.iterations() * n);
  state.SetLabel(parallel ? "parallel" : "serial");
}
BENCHMARK(BM_avg_ratio_mc)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

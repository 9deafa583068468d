// Serial reference vs OpenMP kernels.
//   ./bench_nmcheck --benchmark_filter=Suite
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "nmcheck/nm_model.hpp"
#include "nmcheck/sim.hpp"
#include "nmcheck/specs.hpp"
#include "support/generators.hpp"

using namespace nmcheck;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) ? "parallel x" + std::to_string(omp_get_max_threads()) : "serial");
}

void BM_Suite(benchmark::State& state) {
  const auto model = build_transition_system({6, 6});
  for (auto _ : state) {
    auto r = run_suite(model, all_specs(), {true, false}, mode(state));
    benchmark::DoNotOptimize(r.results.data());
  }
  label(state);
}
BENCHMARK(BM_Suite)->Arg(0)->Arg(1)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_MonitorBatch(benchmark::State& state) {
  testing::Rng rng(7);
  std::vector<Trace> traces;
  for (int k = 0; k < 5000; ++k) traces.push_back(testing::random_trace(rng, 50));
  for (auto _ : state) {
    auto counts = monitor_batch({4, 4}, traces, all_specs(), {true, false}, ControllerVariant::Correct, mode(state));
    benchmark::DoNotOptimize(counts.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(traces.size()));
  label(state);
}
BENCHMARK(BM_MonitorBatch)->Arg(0)->Arg(1)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_DecodeFilter(benchmark::State& state) {
  const NMParams p{8, 8};
  for (auto _ : state) benchmark::DoNotOptimize(count_decodable_strings(p, mode(state)));
  state.SetItemsProcessed(state.iterations() * (1LL << p.bit_width()));
  label(state);
}
BENCHMARK(BM_DecodeFilter)->Arg(0)->Arg(1)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

// Microbenchmarks for the planner hot paths: one all-accepting round at
// various sizes/densities, with and without the behavior-preserving
// speedups, plus the instance generator itself.

#include <benchmark/benchmark.h>

#include "clearx/gen.hpp"
#include "clearx/protocol.hpp"

using namespace clearx;

namespace {

Instance make(int n, int m, double p, std::uint64_t trial) {
  GenConfig cfg;
  cfg.num_agents = n;
  cfg.num_goods = m;
  cfg.density = p;
  cfg.master_seed = 12345;
  return random_instance(cfg, trial);
}

void bm_round(benchmark::State& state, bool opts) {
  int n = static_cast<int>(state.range(0));
  int m = static_cast<int>(state.range(1));
  double p = static_cast<double>(state.range(2)) / 10.0;
  Instance inst = make(n, m, p, 0);
  ParticipantSet all = ParticipantSet::all(inst);
  StrategyProfile profile = uniform_profile(inst.num_agents, accepting());
  ProtocolConfig cfg = opts ? ProtocolConfig::all_opts() : ProtocolConfig{};
  for (auto _ : state) {
    Trace tr = run(inst, all, profile, cfg);
    benchmark::DoNotOptimize(tr.final_allocation.data.data());
  }
}

void full_round_args(benchmark::internal::Benchmark* b) {
  for (int n : {8, 16, 32})
    for (int p : {1, 5, 9}) b->Args({n, n, p});
  b->Args({50, 50, 5});
}

BENCHMARK_CAPTURE(bm_round, baseline, false)->Apply(full_round_args);
BENCHMARK_CAPTURE(bm_round, optimized, true)->Apply(full_round_args);

void bm_generate(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  GenConfig cfg;
  cfg.num_agents = n;
  cfg.num_goods = n;
  cfg.master_seed = 7;
  std::uint64_t trial = 0;
  for (auto _ : state) {
    Instance inst = random_instance(cfg, trial++);
    benchmark::DoNotOptimize(inst.initial.data());
  }
}

BENCHMARK(bm_generate)->Arg(8)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();

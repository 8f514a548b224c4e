#include <benchmark/benchmark.h>

#include "cartilab/cycle_sim.hpp"
#include "cartilab/presets.hpp"

namespace u = cartilab::units;
namespace cy = cartilab::cycle;

static void BM_RunProtocol(benchmark::State& state) {
  cy::Protocol p;
  p.assembly = cartilab::presets::mpa_assembly();
  for (int i = 0; i < state.range(0); ++i) {
    p.steps.push_back(cy::LoadStep{u::pounds(8)});
    p.steps.push_back(cy::WipeStep{});
    p.steps.push_back(cy::UnloadStep{});
  }
  const auto init = cy::initial_state(p.assembly, {});
  const auto cal = cy::default_calibration(p, init);
  for (auto _ : state) benchmark::DoNotOptimize(cy::run_protocol(p, init, cal));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(p.steps.size()));
}
BENCHMARK(BM_RunProtocol)->Arg(5)->Arg(1000);

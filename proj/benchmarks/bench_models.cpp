#include <benchmark/benchmark.h>

#include "cartilab/contact_geometry.hpp"
#include "cartilab/exudation.hpp"
#include "cartilab/presets.hpp"

namespace u = cartilab::units;

static void BM_SheetExudation(benchmark::State& state) {
  const auto sheet = cartilab::presets::kgf_assembly();
  double w = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cartilab::exudation::sheet_exudation(sheet, u::kilograms_force(w)));
    w = w < 10.0 ? w + 0.01 : 1.0;
  }
}
BENCHMARK(BM_SheetExudation);

static void BM_PitchRoundTrip(benchmark::State& state) {
  const auto r = u::millimetres(3);
  double l = 0.1;
  for (auto _ : state) {
    const auto d = cartilab::contact::min_deflection_for_pitch(u::millimetres(l), r);
    benchmark::DoNotOptimize(cartilab::contact::max_pitch(r, d));
    l = l < 5.9 ? l + 0.01 : 0.1;
  }
}
BENCHMARK(BM_PitchRoundTrip);

#include <benchmark/benchmark.h>

#include <numbers>
#include <sstream>

#include "cartilab/lattice_layout.hpp"

namespace u = cartilab::units;
namespace ly = cartilab::layout;

namespace {

const ly::HoleSpec kHole{u::millimetres(1), u::millimetres(6)};

void BM_FlatLayout(benchmark::State& state) {
  const auto side = u::millimetres(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ly::flat_layout(side, side, u::millimetres(2), kHole));
  }
}
BENCHMARK(BM_FlatLayout)->Arg(14)->Arg(100)->Arg(400);

void BM_CapLayout(benchmark::State& state) {
  const auto pitch = u::millimetres(static_cast<double>(state.range(0)) / 10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ly::spherical_cap_layout(u::millimetres(20), std::numbers::pi / 3, pitch, kHole));
  }
}
BENCHMARK(BM_CapLayout)->Arg(40)->Arg(20)->Arg(15);

// Coverage cost grows with samples x holes.
void BM_Coverage(benchmark::State& state) {
  const auto lay =
      ly::spherical_cap_layout(u::millimetres(20), std::numbers::pi / 3, u::millimetres(2), kHole);
  const int samples = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ly::verify_coverage(lay, u::millimetres(1), samples));
  }
  state.counters["holes"] = static_cast<double>(lay.holes.size());
}
BENCHMARK(BM_Coverage)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_WriteStl(benchmark::State& state) {
  const auto side = u::millimetres(static_cast<double>(state.range(0)));
  const auto lay = ly::flat_layout(side, side, u::millimetres(2), kHole);
  for (auto _ : state) {
    std::ostringstream out(std::ios::binary);
    ly::write_stl(lay, out);
    benchmark::DoNotOptimize(out.str().size());
  }
  state.SetItemsProcessed(state.iterations() * ly::stl_triangle_count(lay));
}
BENCHMARK(BM_WriteStl)->Arg(14)->Arg(100);

}  // namespace

BENCHMARK_MAIN();

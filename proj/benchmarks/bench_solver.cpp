#include <benchmark/benchmark.h>

#include "xdipole/em.hpp"
#include "xdipole/farfield.hpp"
#include "xdipole/geometry.hpp"
#include "xdipole/metrics.hpp"

namespace {

using namespace xdipole;

ArrayDesign bench_design() {
  ArrayDesign d;
  d.lx1 = 35.21e-3;
  d.lx2 = 43.83e-3;
  d.ly1 = 40.17e-3;
  d.ly2 = 44.64e-3;
  d.wx1 = 2.95e-3;
  d.wx2 = 4.14e-3;
  d.wy1 = 3.30e-3;
  d.wy2 = 3.29e-3;
  d.load_reactance = -74.96;
  d.frequency = 3.5e9;
  d.spacing_d = 0.15 * wavelength(d.frequency);
  return d;
}

void BM_fill_matrix(benchmark::State& state) {
  const int segments = static_cast<int>(state.range(0));
  const ArrayDesign design = bench_design();
  const WireModel model = build_model(design, segments);
  for (auto _ : state) {
    MomSystem system = fill_matrix(model, design.frequency);
    benchmark::DoNotOptimize(system.z.data());
  }
}
BENCHMARK(BM_fill_matrix)->Arg(12)->Arg(16)->Arg(20);

void BM_solve(benchmark::State& state) {
  const ArrayDesign design = bench_design();
  const WireModel model = build_model(design, 20);
  const PortNetwork ports = make_ports(model, design);
  const MomSystem system = apply_ports(fill_matrix(model, design.frequency), ports);
  for (auto _ : state) {
    SolveResult result = solve(system, ports);
    benchmark::DoNotOptimize(result.currents.data());
  }
}
BENCHMARK(BM_solve);

void BM_build_pattern(benchmark::State& state) {
  const ArrayDesign design = bench_design();
  const WireModel model = build_model(design, 20);
  const PortNetwork ports = make_ports(model, design);
  const SolveResult result =
      solve(apply_ports(fill_matrix(model, design.frequency), ports), ports);
  for (auto _ : state) {
    PatternGrid grid = build_pattern(model, result, design.frequency, 50.0);
    benchmark::DoNotOptimize(grid.p_rad);
  }
}
BENCHMARK(BM_build_pattern);

void BM_analyze_design(benchmark::State& state) {
  const ArrayDesign design = bench_design();
  for (auto _ : state) {
    Analysis analysis = analyze_design(design, 20, 50.0);
    benchmark::DoNotOptimize(analysis.report.g_lhcp_db);
  }
}
BENCHMARK(BM_analyze_design);

}  // namespace

BENCHMARK_MAIN();

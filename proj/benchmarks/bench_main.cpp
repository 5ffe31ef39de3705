#include <crsurf/functionals.hpp>
#include <crsurf/variational.hpp>

#include <benchmark/benchmark.h>

#include <cmath>

using namespace crsurf;

namespace {

SurfaceCalculus clifford(double t) {
  ModelPtr m = parse_model("rossi:" + std::to_string(t));
  return SurfaceCalculus(m, parse_surface("rossi-sigma:0.70710678118654757", *m));
}

SurfaceCalculus disk_plane() {
  ModelPtr m = make_disk_bundle();
  return SurfaceCalculus(m, plane_surface(0.3, 1.0, 0.2));
}

void BM_ModelFrame(benchmark::State& state) {
  ModelPtr m = parse_model("rossi:0.3");
  const Vec3 p(0.6, 1.1, 2.3);
  for (auto _ : state) benchmark::DoNotOptimize(m->frame(p));
}
BENCHMARK(BM_ModelFrame);

void BM_LocalFrame(benchmark::State& state) {
  const SurfaceCalculus sc = clifford(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(sc.local(1.0, 2.0));
}
BENCHMARK(BM_LocalFrame);

void BM_HcrPoint(benchmark::State& state) {
  const SurfaceCalculus sc = disk_plane();
  for (auto _ : state) benchmark::DoNotOptimize(sc.H_cr(0.1, 0.5));
}
BENCHMARK(BM_HcrPoint);

void BM_ResidualE1(benchmark::State& state) {
  const SurfaceCalculus sc = clifford(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(el1_general(sc, 1.0, 2.0));
}
BENCHMARK(BM_ResidualE1);

void BM_ResidualE2(benchmark::State& state) {
  const SurfaceCalculus sc = disk_plane();
  for (auto _ : state) benchmark::DoNotOptimize(el2_constant(sc, 0.1, 0.5));
}
BENCHMARK(BM_ResidualE2);

void BM_IntegrateE1(benchmark::State& state) {
  const SurfaceCalculus sc = clifford(0.0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(integrate_once(sc, Functional::E1, n, n));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_IntegrateE1)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_IntegrateE2(benchmark::State& state) {
  const SurfaceCalculus sc = disk_plane();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(integrate_once(sc, Functional::E2, n, n));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_IntegrateE2)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

#include <cmath>

#include <benchmark/benchmark.h>

#include "nls/geometric_optics.hpp"
#include "nls/potential.hpp"
#include "nls/propagator.hpp"
#include "nls/spectral.hpp"

using namespace nls;

namespace {

WaveField gaussian(const GridPtr& g) {
  return sample_field(g, [](double x) {
    return std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  });
}

void BM_spectral_gradient(benchmark::State& state) {
  GridPtr g = make_grid(1, 16.0, static_cast<int>(state.range(0)));
  WaveField u = gaussian(g);
  for (auto _ : state) {
    auto grad = spectral_gradient(u);
    benchmark::DoNotOptimize(grad);
  }
}
BENCHMARK(BM_spectral_gradient)->Arg(256)->Arg(1024)->Arg(4096);

void BM_strang_step(benchmark::State& state) {
  GridPtr g = make_grid(1, 16.0, static_cast<int>(state.range(0)));
  WaveField u = gaussian(g);
  Potential hp = Potential::harmonic(1.0);
  SimulationParams params;
  params.lambda = 1.0;
  for (auto _ : state) {
    u = strang_step(u, hp, params, 1e-3);
    benchmark::DoNotOptimize(u);
  }
}
BENCHMARK(BM_strang_step)->Arg(256)->Arg(1024)->Arg(4096);

void BM_strang_step_2d(benchmark::State& state) {
  GridPtr g = make_grid(2, 8.0, static_cast<int>(state.range(0)));
  WaveField u = sample_field(g, [](double x, double y) {
    return std::pow(M_PI, -0.5) * std::exp(-0.5 * (x * x + y * y));
  });
  Potential hp = Potential::harmonic(1.0);
  SimulationParams params;
  for (auto _ : state) {
    u = strang_step(u, hp, params, 1e-3);
    benchmark::DoNotOptimize(u);
  }
}
BENCHMARK(BM_strang_step_2d)->Arg(64)->Arg(128)->Arg(256);

void BM_trace_rays(benchmark::State& state) {
  GridPtr g = make_grid(1, 16.0, static_cast<int>(state.range(0)));
  Potential hp = Potential::harmonic(1.0);
  std::vector<double> y = default_launch_set(*g);
  for (auto _ : state) {
    RayBundle b = trace_rays(hp, y, 1.0, 1e-4);
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_trace_rays)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();

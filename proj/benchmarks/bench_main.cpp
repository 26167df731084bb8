#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "swimlab/pipeline.hpp"

using namespace swimlab;

namespace {

Model model_at(double f) {
  RunConfig c;
  c.actuation.gait = GaitChoice::sequential;
  c.actuation.frequency_hz = f;
  return build_model(c);
}

}  // namespace

static void BM_Simulate(benchmark::State& state) {
  const Model m = model_at(8.05);
  SimulationOptions o;
  o.duration = static_cast<double>(state.range(0));
  o.fluid = m.config.fluid;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(m.beam, m.program, o));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(o.duration / o.dt));
}
BENCHMARK(BM_Simulate)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_RunSimulation(benchmark::State& state) {
  const Model m = model_at(8.05);
  for (auto _ : state) benchmark::DoNotOptimize(run_simulation(m));
}
BENCHMARK(BM_RunSimulation)->Unit(benchmark::kMillisecond);

static void BM_TravelingIndex(benchmark::State& state) {
  const auto n_st = static_cast<int>(state.range(0));
  const int n_t = 1024;
  ComplexField f;
  f.analytic.resize(n_t, n_st);
  for (int i = 0; i < n_t; ++i)
    for (int j = 0; j < n_st; ++j) {
      const double ph = 2.0 * std::numbers::pi * (i / 64.0 - j / static_cast<double>(n_st));
      f.analytic(i, j) = std::complex<double>(std::cos(ph), std::sin(ph)) * (1.0 + 0.3 * std::cos(ph));
    }
  for (auto _ : state) benchmark::DoNotOptimize(traveling_index(f));
}
BENCHMARK(BM_TravelingIndex)->Arg(16)->Arg(41)->Arg(161);

static void BM_ThrustFilter(benchmark::State& state) {
  const double f = 2.0, dt = 1e-4;
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> t(n), fx(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = static_cast<double>(i) * dt;
    fx[i] = 7.2e-3 + 0.05 * std::sin(2.0 * std::numbers::pi * f * t[i]);
  }
  for (auto _ : state) benchmark::DoNotOptimize(thrust_timeseries(t, fx, f));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}
BENCHMARK(BM_ThrustFilter)->Arg(40000)->Arg(160000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "membranekit/experiment.hpp"
#include "membranekit/noise.hpp"
#include "membranekit/ringdown.hpp"

using namespace mkit;

namespace {

constexpr double kMass = 3.875e-11;
constexpr double kOmega0 = 2.0 * std::numbers::pi * 1e5;
constexpr double kPeriod = 1e-5;

ringdown::SimConfig sim_config(double periods, std::size_t decimation) {
  ringdown::SimConfig cfg;
  cfg.dt = kPeriod / 100.0 * units::s;
  cfg.duration = periods * kPeriod * units::s;
  cfg.record_decimation = decimation;
  return cfg;
}

ringdown::TimeSeries trace(double q, double temperature, double periods) {
  return ringdown::simulate(kMass * units::kg, kMass * kOmega0 * kOmega0 * units::N_per_m,
                            kOmega0 / q * units::per_s, temperature * units::K, sim_config(periods, 5));
}

}  // namespace

static void BM_SimulateSteps(benchmark::State& state) {
  const auto cfg = sim_config(static_cast<double>(state.range(0)) / 100.0, 1);
  for (auto _ : state) {
    auto s = ringdown::simulate(kMass * units::kg, kMass * kOmega0 * kOmega0 * units::N_per_m,
                                kOmega0 / 1e3 * units::per_s, 300.0 * units::K, cfg);
    benchmark::DoNotOptimize(s.samples.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateSteps)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_FitRingdown(benchmark::State& state) {
  const auto series = trace(1e3, 300.0, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ringdown::fit_ringdown(series));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(series.size()));
}
BENCHMARK(BM_FitRingdown)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_PowerSpectrumAndLorentzian(benchmark::State& state) {
  const auto series = trace(1e2, 300.0, 20000.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ringdown::lorentzian_fit(ringdown::power_spectrum(series)));
  }
}
BENCHMARK(BM_PowerSpectrumAndLorentzian)->Unit(benchmark::kMillisecond);

static void BM_ForceNoiseDensity(benchmark::State& state) {
  const Quantity k = 30.0 * units::N_per_m, t = 300.0 * units::K, w = kOmega0 * units::rad_per_s;
  double q = 1e6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(noise::force_noise_density(k, t, w, Quantity(q)));
    q += 1.0;
  }
}
BENCHMARK(BM_ForceNoiseDensity);

static void BM_Sweep(benchmark::State& state) {
  const auto config = experiment::load_config(
      "[membrane]\n[environment]\nmedium = helium\nhe3_fraction = 1e-10\n[geometry]\nradius = 1 cm\n");
  auto sweep = experiment::default_sweep(static_cast<experiment::SweepAxis>(state.range(0)));
  sweep.points = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(experiment::run_sweep(config, sweep));
  state.SetItemsProcessed(state.iterations() * sweep.points);
}
BENCHMARK(BM_Sweep)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_ConfigRoundTrip(benchmark::State& state) {
  const auto config = experiment::load_config(
      "[membrane]\n[environment]\nmedium = helium\n[geometry]\nradius = 1 cm\n[sim]\nduration = 1 ms\n");
  for (auto _ : state) {
    benchmark::DoNotOptimize(experiment::load_config(experiment::effective_config(config)));
  }
}
BENCHMARK(BM_ConfigRoundTrip);
BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <cmath>

#include "ptscatter/cgamma.hpp"
#include "ptscatter/pole_hunt.hpp"
#include "ptscatter/scarf2.hpp"
#include "ptscatter/scatter1d.hpp"

using namespace ptscatter;

static void BM_GammaComplex(benchmark::State& state) {
  Complex z{3.7, -2.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(cgamma::gamma(z).value());
    z += Complex(1e-9, 1e-9);
  }
}
BENCHMARK(BM_GammaComplex);

static void BM_GammaReflection(benchmark::State& state) {
  Complex z{-7.3, 0.4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(cgamma::gamma(z).value());
    z += Complex(1e-9, 1e-9);
  }
}
BENCHMARK(BM_GammaReflection);

static void BM_TransmissionAmplitude(benchmark::State& state) {
  const scarf2::PotentialParams p{6.0, 2.0};
  double k = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        scarf2::transmission_amplitude(p, {k, 0.0}).value());
    k += 1e-9;
  }
}
BENCHMARK(BM_TransmissionAmplitude);

static void BM_SolveScattering(benchmark::State& state) {
  const auto pot = scarf2::as_potential_fn({6.0, 2.0});
  const scatter1d::DomainConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        scatter1d::solve_scattering(pot, 1.0, scatter1d::Side::LeftIncidence,
                                    cfg)
            .T);
  }
}
BENCHMARK(BM_SolveScattering);

static void BM_FindPole(benchmark::State& state) {
  const scarf2::PotentialParams p{1.0, 7.75};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        pole_hunt::find_pole(p, {1.27, 0.01}).k_pole);
  }
}
BENCHMARK(BM_FindPole);

BENCHMARK_MAIN();

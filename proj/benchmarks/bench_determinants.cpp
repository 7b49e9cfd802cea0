#include <benchmark/benchmark.h>

#include "conicdet/jump_operator.hpp"
#include "conicdet/spectral_det.hpp"
#include "conicdet/verify.hpp"

using namespace conicdet;

static void BM_ConeSpectrum(benchmark::State& state) {
  const double cutoff = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_cone_spectrum(ConeSpec(2.0, 1.0), cutoff).count());
}
BENCHMARK(BM_ConeSpectrum)->Arg(2500)->Arg(10000)->Arg(40000)->Unit(benchmark::kMillisecond);

static void BM_HeatLogdet(benchmark::State& state) {
  const ConeSpec cone(1.0, 1.0);
  const auto spectrum = enumerate_cone_spectrum(cone, 40000.0);
  const auto heat = heat_coefficients(cone);
  for (auto _ : state) benchmark::DoNotOptimize(logdet_from_spectrum(spectrum, heat).logdet);
}
BENCHMARK(BM_HeatLogdet)->Unit(benchmark::kMillisecond);

static void BM_GelfandYaglomCone(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gelfand_yaglom_logdet(ConeSpec(3.0, 1.0)).logdet);
}
BENCHMARK(BM_GelfandYaglomCone)->Unit(benchmark::kMillisecond);

static void BM_JumpDeterminant(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(logdet_model_r(0.01, 2.0).residual);
}
BENCHMARK(BM_JumpDeterminant);

static void BM_BhatLogdet(benchmark::State& state) {
  const std::vector<double> bs{0.3, 0.9, 0.5, 1.0, 0.7, 0.2};
  for (auto _ : state) benchmark::DoNotOptimize(bhat_logdet(bs));
}
BENCHMARK(BM_BhatLogdet);

#include <benchmark/benchmark.h>

#include "conicdet/specfun.hpp"

using namespace conicdet;

static void BM_BesselZero(benchmark::State& state) {
  const BesselOrder nu(static_cast<double>(state.range(0)) / 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(bessel_j_zero(nu, 25));
}
BENCHMARK(BM_BesselZero)->Arg(0)->Arg(7)->Arg(80);

static void BM_ZerosBelow(benchmark::State& state) {
  const double kmax = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bessel_j_zeros_below(BesselOrder(3.0), kmax));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ZerosBelow)->Range(50, 800)->Complexity();

static void BM_CrossZerosBelow(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cross_product_zeros_below(BesselOrder(2.5), 0.3, 200.0));
}
BENCHMARK(BM_CrossZerosBelow);

#include <benchmark/benchmark.h>

#include "rpl/special_functions.hpp"

static void BM_BesselK0Small(benchmark::State& state) {
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpl::bessel_k0(x));
  }
}
BENCHMARK(BM_BesselK0Small);

static void BM_BesselK0Large(benchmark::State& state) {
  double x = 12.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpl::bessel_k0(x));
  }
}
BENCHMARK(BM_BesselK0Large);

static void BM_BesselK0Scaled(benchmark::State& state) {
  double x = 500.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpl::bessel_k0_scaled(x));
  }
}
BENCHMARK(BM_BesselK0Scaled);

static void BM_NormalCdf(benchmark::State& state) {
  double x = 1.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpl::std_normal_cdf(x));
  }
}
BENCHMARK(BM_NormalCdf);

static void BM_TruncatedMoment(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpl::truncated_gaussian_moment(4, 3.0));
  }
}
BENCHMARK(BM_TruncatedMoment);

#include <benchmark/benchmark.h>

#include "rpl/balance.hpp"
#include "rpl/product_distribution.hpp"

static void BM_PdfAbs(benchmark::State& state) {
  const rpl::Correlation rho(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpl::pdf_abs(rho, 1.3));
  }
}
BENCHMARK(BM_PdfAbs);

static void BM_CdfAbs(benchmark::State& state) {
  rpl::AbsProductDist dist{rpl::Correlation(0.5)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(dist.cdf(1.3));
  }
}
BENCHMARK(BM_CdfAbs);

static void BM_Quantile(benchmark::State& state) {
  rpl::AbsProductDist dist{rpl::Correlation(0.5)};
  benchmark::DoNotOptimize(dist.quantile(0.5));  // build the cache once
  for (auto _ : state) {
    benchmark::DoNotOptimize(dist.quantile(0.8815));
  }
}
BENCHMARK(BM_Quantile);

static void BM_BalanceH(benchmark::State& state) {
  rpl::AbsProductDist dist{rpl::Correlation(0.795)};
  benchmark::DoNotOptimize(dist.quantile(0.5));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpl::balance_h(dist, 0.1185));
  }
}
BENCHMARK(BM_BalanceH);

static void BM_BalanceRatio(benchmark::State& state) {
  rpl::AbsProductDist dist{rpl::Correlation(0.795)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpl::balance_ratio(dist));
  }
}
BENCHMARK(BM_BalanceRatio);

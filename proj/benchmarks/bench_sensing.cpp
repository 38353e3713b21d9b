#include <benchmark/benchmark.h>

#include "rpl/robc.hpp"
#include "rpl/sensing.hpp"

namespace {
const rpl::SensingEnsemble& ensemble() {
  static const rpl::SensingEnsemble ens = rpl::sample_ensemble(4000, 20, 1);
  return ens;
}
}  // namespace

static void BM_Apply(benchmark::State& state) {
  const auto& ens = ensemble();
  const rpl::SymMatrix X = rpl::SymMatrix::Identity(20, 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpl::apply(ens, X));
  }
}
BENCHMARK(BM_Apply);

static void BM_ApplyAdjoint(benchmark::State& state) {
  const auto& ens = ensemble();
  const rpl::Vec y = rpl::Vec::Ones(4000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpl::apply_adjoint(ens, y));
  }
}
BENCHMARK(BM_ApplyAdjoint);

static void BM_ApplyTangentFast(benchmark::State& state) {
  const auto& ens = ensemble();
  rpl::Vec x = rpl::Vec::Zero(20), y = rpl::Vec::Zero(20);
  x[0] = 1.0;
  y[1] = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpl::apply_tangent_fast(ens, x, y));
  }
}
BENCHMARK(BM_ApplyTangentFast);

static void BM_WorstCaseRatio(benchmark::State& state) {
  const auto& ens = ensemble();
  rpl::Vec x = rpl::Vec::Zero(20), y = rpl::Vec::Zero(20);
  x[0] = 1.0;
  y[0] = 0.795;
  y[1] = 0.606609;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpl::worst_case_ratio(ens, x, y, 0.1185));
  }
}
BENCHMARK(BM_WorstCaseRatio);

static void BM_AdversarialOutliers(benchmark::State& state) {
  const auto& ens = ensemble();
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpl::gen_adversarial_outliers(ens, 0.1));
  }
}
BENCHMARK(BM_AdversarialOutliers);

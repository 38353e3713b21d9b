#include <benchmark/benchmark.h>

#include "rpl/sensing.hpp"
#include "rpl/solver.hpp"

static void BM_ProjectPsd(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const rpl::SensingEnsemble ens = rpl::sample_ensemble(1, n, 2);
  rpl::SymMatrix X = rpl::apply_adjoint(ens, rpl::Vec::Ones(1));
  X -= 0.5 * rpl::SymMatrix::Identity(n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpl::project_psd(X));
  }
}
BENCHMARK(BM_ProjectPsd)->Arg(5)->Arg(20)->Arg(50);

static void BM_SolveNoiseless(benchmark::State& state) {
  const int n = 5, m = 1500;
  const rpl::SensingEnsemble ens = rpl::sample_ensemble(m, n, 3);
  rpl::Vec x0 = rpl::Vec::Zero(n);
  x0[0] = 0.1;
  const rpl::Vec b = rpl::apply(ens, rpl::SymMatrix(x0 * x0.transpose()));
  rpl::SolverConfig cfg;
  cfg.max_iters = 200;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpl::solve(ens, b, cfg));
  }
}
BENCHMARK(BM_SolveNoiseless)->Unit(benchmark::kMillisecond);

static void BM_SolveAdversarial(benchmark::State& state) {
  const int n = 5, m = 1500;
  const rpl::SensingEnsemble ens = rpl::sample_ensemble(m, n, 4);
  rpl::Vec x0 = rpl::Vec::Zero(n);
  x0[0] = 0.1;
  const auto adv = rpl::gen_adversarial_outliers(ens, 0.1);
  const rpl::Vec b =
      rpl::measure(ens, rpl::SymMatrix(x0 * x0.transpose()), adv.noise);
  rpl::SolverConfig cfg;
  cfg.max_iters = 200;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpl::solve(ens, b, cfg));
  }
}
BENCHMARK(BM_SolveAdversarial)->Unit(benchmark::kMillisecond);

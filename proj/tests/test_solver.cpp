#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "rpl/rng.hpp"
#include "rpl/sensing.hpp"
#include "rpl/solver.hpp"

using rpl::apply;
using rpl::extract_signal;
using rpl::gen_adversarial_outliers;
using rpl::measure;
using rpl::NoiseSpec;
using rpl::objective;
using rpl::project_psd;
using rpl::sample_ensemble;
using rpl::SensingEnsemble;
using rpl::signal_error;
using rpl::Solution;
using rpl::solve;
using rpl::SolverConfig;
using rpl::SymMatrix;
using rpl::Vec;

namespace {

SymMatrix random_sym(rpl::Rng& rng, int n) {
  SymMatrix G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
  return 0.5 * (G + G.transpose());
}

SymMatrix random_psd(rpl::Rng& rng, int n) {
  const SymMatrix X = random_sym(rng, n);
  return X * X.transpose() + 1e-6 * SymMatrix::Identity(n, n);
}

}  // namespace

TEST_CASE("project_psd: idempotence and eigenvalue clipping") {
  rpl::Rng rng(1);
  const SymMatrix psd = random_psd(rng, 5);
  CHECK((project_psd(psd) - psd).norm() <= 1e-12 * psd.norm());

  SymMatrix D = SymMatrix::Zero(2, 2);
  D(0, 0) = 1.0;
  D(1, 1) = -2.0;
  SymMatrix expected = SymMatrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  CHECK((project_psd(D) - expected).norm() <= 1e-14);
}

TEST_CASE("project_psd is the Frobenius-nearest PSD matrix (probe oracle)") {
  rpl::Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const SymMatrix X = random_sym(rng, 3);
    const SymMatrix P = project_psd(X);
    const double dist = (X - P).norm();
    // any other PSD candidate is at least as far
    for (int probe = 0; probe < 60; ++probe) {
      const SymMatrix Z = random_psd(rng, 3);
      CHECK(dist <= (X - Z).norm() + 1e-12);
    }
    // including small PSD perturbations of the projection itself
    for (int probe = 0; probe < 20; ++probe) {
      const SymMatrix Z = project_psd(P + 0.05 * random_sym(rng, 3));
      CHECK(dist <= (X - Z).norm() + 1e-12);
    }
  }
}

TEST_CASE("objective: exact l1 residual identities") {
  const SensingEnsemble ens = sample_ensemble(40, 4, 3);
  Vec x0 = Vec::Zero(4);
  x0[0] = 0.1;
  const SymMatrix X0 = x0 * x0.transpose();
  const Vec b = apply(ens, X0);
  CHECK(objective(ens, b, X0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(objective(ens, b, SymMatrix::Zero(4, 4)) ==
        doctest::Approx(b.lpNorm<1>()).epsilon(1e-14));

  const auto adv = gen_adversarial_outliers(ens, 0.2);
  const Vec noisy = measure(ens, X0, adv.noise);
  double z_l1 = 0.0;
  for (double v : adv.noise.z_values) z_l1 += std::abs(v);
  CHECK(objective(ens, noisy, X0) == doctest::Approx(z_l1).epsilon(1e-12));
}

TEST_CASE("solve: noiseless exact recovery at desk scale") {
  const int n = 4, m = 120;
  const SensingEnsemble ens = sample_ensemble(m, n, 8);
  Vec x0 = Vec::Zero(n);
  x0[0] = 0.1;
  const SymMatrix X0 = x0 * x0.transpose();
  const Vec b = apply(ens, X0);
  const Solution sol = solve(ens, b);
  CHECK((sol.x_hat - X0).norm() / X0.norm() < 0.1);
}

TEST_CASE("solve: grid+polish oracle at n=2, m=8") {
  const int n = 2, m = 8;
  const SensingEnsemble ens = sample_ensemble(m, n, 5);
  Vec x0(2);
  x0 << 0.1, 0.05;
  const SymMatrix X0 = x0 * x0.transpose();
  const Vec b = apply(ens, X0);
  const Solution sol = solve(ens, b);

  // dense search over PSD 2x2 matrices [[a, c], [c, d]]: coarse grid, then
  // local refinement around the best cell
  auto value = [&](double a, double c, double d) {
    SymMatrix X(2, 2);
    X << a, c, c, d;
    return objective(ens, b, X);
  };
  double best = value(0, 0, 0);
  double ba = 0, bc = 0, bd = 0;
  const double hi = 0.03;
  for (double a = 0.0; a <= hi; a += 0.0015) {
    for (double d = 0.0; d <= hi; d += 0.0015) {
      const double cmax = std::sqrt(a * d);
      for (double c = -cmax; c <= cmax; c += 0.0015) {
        const double v = value(a, c, d);
        if (v < best) {
          best = v;
          ba = a;
          bc = c;
          bd = d;
        }
      }
    }
  }
  for (double step = 0.001; step > 1e-7; step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int da = -1; da <= 1; ++da)
        for (int dc = -1; dc <= 1; ++dc)
          for (int dd = -1; dd <= 1; ++dd) {
            const double a = ba + da * step, c = bc + dc * step, d = bd + dd * step;
            if (a < 0 || d < 0 || c * c > a * d) continue;
            const double v = value(a, c, d);
            if (v < best) {
              best = v;
              ba = a;
              bc = c;
              bd = d;
              improved = true;
            }
          }
    }
  }
  CHECK(sol.objective <= best + 1e-4);
}

TEST_CASE("solve: scaling equivariance in b") {
  const int n = 4, m = 200;
  const SensingEnsemble ens = sample_ensemble(m, n, 21);
  Vec x0 = Vec::Zero(n);
  x0[0] = 0.1;
  x0[2] = 0.07;
  const SymMatrix X0 = x0 * x0.transpose();
  const Vec b = apply(ens, X0);
  const double c = 10.0;
  const Solution sol1 = solve(ens, b);
  const Solution sol2 = solve(ens, Vec(c * b));
  CHECK((c * sol1.x_hat - sol2.x_hat).norm() / (c * X0.norm()) <= 1e-3);
}

TEST_CASE("solve: running-best objective is nonincreasing and feasible") {
  const int n = 5, m = 150;
  const SensingEnsemble ens = sample_ensemble(m, n, 33);
  Vec x0 = Vec::Zero(n);
  x0[0] = 0.1;
  const auto adv = gen_adversarial_outliers(ens, 0.1);
  const Vec b = measure(ens, x0 * x0.transpose(), adv.noise);
  const Solution sol = solve(ens, b);

  double best = sol.history.front().second;
  double running = best;
  for (const auto& [iter, obj] : sol.history) {
    running = std::min(running, obj);
    CHECK(running <= best + 1e-15);
    best = std::min(best, running);
  }
  // reported objective equals the recomputed loss
  CHECK(sol.objective == doctest::Approx(objective(ens, b, sol.x_hat)).epsilon(1e-9));
  // feasibility: lambda_min >= -1e-8 * trace scale
  Eigen::SelfAdjointEigenSolver<SymMatrix> eig(sol.x_hat);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-8 * std::max(1e-300, sol.x_hat.trace()));
}

TEST_CASE("solve: zero and given initializations reach the same solution") {
  const int n = 3, m = 90;
  const SensingEnsemble ens = sample_ensemble(m, n, 44);
  Vec x0 = Vec::Zero(n);
  x0[0] = 0.1;
  const SymMatrix X0 = x0 * x0.transpose();
  const Vec b = apply(ens, X0);

  SolverConfig zero_cfg;
  zero_cfg.init_mode = SolverConfig::Init::zero;
  CHECK((solve(ens, b, zero_cfg).x_hat - X0).norm() / X0.norm() < 0.1);

  SolverConfig given_cfg;
  given_cfg.init_mode = SolverConfig::Init::given;
  given_cfg.x_init = 0.5 * X0;
  CHECK((solve(ens, b, given_cfg).x_hat - X0).norm() / X0.norm() < 0.1);

  SolverConfig bad_given = given_cfg;
  bad_given.x_init = SymMatrix::Zero(n + 1, n + 1);
  CHECK_THROWS_AS(solve(ens, b, bad_given), std::invalid_argument);
}

TEST_CASE("solve: degenerate and invalid inputs") {
  const SensingEnsemble ens = sample_ensemble(20, 3, 2);
  const Solution zero = solve(ens, Vec::Zero(20));
  CHECK(zero.converged);
  CHECK(zero.x_hat.norm() == 0.0);

  Vec bad = Vec::Zero(20);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(solve(ens, bad), std::invalid_argument);
  CHECK_THROWS_AS(solve(ens, Vec::Zero(19)), std::invalid_argument);

  SolverConfig cfg;
  cfg.max_iters = 0;
  CHECK_THROWS_AS(solve(ens, Vec::Ones(20), cfg), std::invalid_argument);
}

TEST_CASE("extract_signal: eigenpair extraction with the sign convention") {
  Vec x0(3);
  x0 << 0.3, -0.4, 0.5;
  const SymMatrix X = x0 * x0.transpose();
  const Vec got = extract_signal(X);
  CHECK(signal_error(got, x0) <= 1e-10);
  // sign convention: first nonzero coordinate positive
  CHECK(got[0] > 0.0);

  SymMatrix D = SymMatrix::Zero(2, 2);
  D(0, 0) = 4.0;
  D(1, 1) = 1.0;
  const Vec top = extract_signal(D);
  CHECK(top[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(top[1] == doctest::Approx(0.0).epsilon(1e-14));

  // rank-2 with a dominant direction plus tiny noise
  rpl::Rng rng(6);
  SymMatrix R = SymMatrix::Zero(3, 3);
  R(0, 0) = 4.0;
  R(1, 1) = 1.0;
  R += 1e-8 * random_sym(rng, 3);
  const Vec approx = extract_signal(R);
  Vec e1 = Vec::Zero(3);
  e1[0] = 2.0;
  CHECK(signal_error(approx, e1) <= 1e-4);

  CHECK(extract_signal(SymMatrix::Zero(4, 4)).norm() == 0.0);
}

TEST_CASE("signal_error: sign-invariant l2 distance") {
  Vec x0(3);
  x0 << 1.0, 2.0, -1.0;
  CHECK(signal_error(-x0, x0) == 0.0);
  Vec shifted = x0;
  shifted[1] += 0.01;
  CHECK(signal_error(shifted, x0) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(signal_error(Vec::Zero(3), x0) == doctest::Approx(x0.norm()).epsilon(1e-14));
  CHECK_THROWS_AS(signal_error(Vec::Zero(2), x0), std::invalid_argument);
}

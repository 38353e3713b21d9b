#include "rpl/robc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "rpl/balance.hpp"
#include "rpl/parallel.hpp"
#include "rpl/rng.hpp"

namespace rpl {

namespace {

Vec random_unit(Rng& rng, int n) {
  Vec v(n);
  for (;;) {
    for (int i = 0; i < n; ++i) v[i] = rng.normal();
    const double norm = v.norm();
    if (norm > 1e-12) return v / norm;
  }
}

}  // namespace

double worst_case_ratio(const SensingEnsemble& ens, const Vec& x, const Vec& y,
                        double s) {
  const double xf2 = 2.0 * x.squaredNorm() * y.squaredNorm() + 2.0 * std::pow(x.dot(y), 2);
  if (!(xf2 > 0.0))
    throw std::invalid_argument("worst_case_ratio: X = x y^T + y x^T is zero");
  const Vec v = apply_tangent_fast(ens, x, y);
  const int m = ens.m();
  const int k = outlier_count(s, m);

  // Moving the k largest magnitudes into S minimizes the objective; both
  // sums run in increasing index order so the value is reproducible.
  const std::vector<int> support = top_magnitude_support(v, k);
  double total = 0.0;
  for (int i = 0; i < m; ++i) total += std::abs(v[i]);
  double top = 0.0;
  for (int i : support) top += std::abs(v[i]);
  return (total - 2.0 * top) / (m * std::sqrt(xf2));
}

RobcReport empirical_lower_bound(const SensingEnsemble& ens, double s, int trials,
                                 std::uint64_t seed, int threads) {
  if (trials < 1) throw std::invalid_argument("empirical_lower_bound: trials >= 1");
  static constexpr double kRhoGrid[] = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5,
                                        0.6, 0.7, 0.8, 0.9, 1.0};
  const int n = ens.n();

  RobcReport report;
  report.s = s;
  report.trials = trials;
  report.per_trial.resize(static_cast<std::size_t>(trials));

  parallel_for_index(
      static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
        Rng rng(derive_seed(seed, {0x726f6263ULL, t}));
        const Vec x = random_unit(rng, n);
        Vec y;
        if (t % 2 == 0) {
          y = random_unit(rng, n);
        } else {
          const double rho = kRhoGrid[(t / 2) % 11];
          Vec perp;
          do {
            perp = random_unit(rng, n);
            perp -= perp.dot(x) * x;
          } while (perp.norm() < 1e-9);
          perp.normalize();
          y = rho * x + std::sqrt(std::max(0.0, 1.0 - rho * rho)) * perp;
          y.normalize();
        }
        report.per_trial[t] = {x.dot(y), worst_case_ratio(ens, x, y, s)};
      });

  double min_ratio = report.per_trial[0].ratio;
  double sum = 0.0;
  for (const RobcTrial& trial : report.per_trial) {
    min_ratio = std::min(min_ratio, trial.ratio);
    sum += trial.ratio;
  }
  report.min_ratio = min_ratio;
  report.mean_ratio = sum / trials;
  report.theoretical = hstar(s).value;
  return report;
}

double expected_ratio(Correlation rho, double s, const QuadratureConfig& quad) {
  const double r = rho.value();
  return std::sqrt(2.0 / (1.0 + r * r)) * balance_h(rho, s, quad);
}

double upper_rip_check(const SensingEnsemble& ens, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("upper_rip_check: trials >= 1");
  const int n = ens.n();
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, {0x757269ULL, static_cast<std::uint64_t>(t)}));
    SymMatrix g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
    const SymMatrix X = 0.5 * (g + g.transpose());
    Eigen::SelfAdjointEigenSolver<SymMatrix> eig(X);
    const double nuclear = eig.eigenvalues().cwiseAbs().sum();
    const double ratio = apply(ens, X).lpNorm<1>() / (ens.m() * nuclear);
    worst = std::max(worst, ratio);
  }
  return worst;
}

}  // namespace rpl

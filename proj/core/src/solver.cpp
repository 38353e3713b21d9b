#include "rpl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace rpl {

namespace {

constexpr int kSmoothingInterval = 500;
constexpr int kConvergenceWindow = 50;
// Earliest iteration at which the flatness test may stop the loop; the first
// smoothing stages move the iterate too coarsely for the window to mean much.
constexpr int kMinItersBeforeStop = 1000;

double median_abs(const Vec& b) {
  std::vector<double> v(b.data(), b.data() + b.size());
  for (double& x : v) x = std::abs(x);
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  return v[mid];
}

double median(const Vec& b) {
  std::vector<double> v(b.data(), b.data() + b.size());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  return v[mid];
}

SymMatrix spectral_init(const SensingEnsemble& ens, const Vec& b, double scale) {
  SymMatrix init = project_psd(apply_adjoint(ens, b) / ens.m());
  const double tr = init.trace();
  if (tr <= 0.0) return SymMatrix::Zero(ens.n(), ens.n());
  double target = median(b);
  if (target <= 0.0) target = scale;
  return init * (target / tr);
}

}  // namespace

void SolverConfig::validate() const {
  if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
  if (!(step_c > 0.0)) throw std::invalid_argument("SolverConfig: step_c must be > 0");
  if (!(tol_obj > 0.0)) throw std::invalid_argument("SolverConfig: tol_obj must be > 0");
  if (smoothing_delta_init < 0.0)
    throw std::invalid_argument("SolverConfig: smoothing_delta_init must be >= 0");
  if (!(smoothing_decay > 0.0 && smoothing_decay < 1.0))
    throw std::invalid_argument("SolverConfig: smoothing_decay must lie in (0, 1)");
}

SymMatrix project_psd(const SymMatrix& X) {
  const SymMatrix sym = 0.5 * (X + X.transpose());
  Eigen::SelfAdjointEigenSolver<SymMatrix> eig(sym);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("project_psd: eigendecomposition failed");
  Vec lambda = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * lambda.asDiagonal() * eig.eigenvectors().transpose();
}

double objective(const SensingEnsemble& ens, const Vec& b, const SymMatrix& X) {
  if (b.size() != ens.m()) throw std::invalid_argument("objective: length mismatch");
  return (apply(ens, X) - b).lpNorm<1>();
}

Solution solve(const SensingEnsemble& ens, const Vec& b, const SolverConfig& config) {
  config.validate();
  if (b.size() != ens.m()) throw std::invalid_argument("solve: length mismatch");
  if (!b.allFinite()) throw std::invalid_argument("solve: b must be finite");

  const int m = ens.m();
  const int n = ens.n();

  Solution sol;
  sol.history.reserve(static_cast<std::size_t>(config.max_iters));

  if (b.lpNorm<1>() == 0.0) {
    // 0 is feasible and optimal.
    sol.x_hat = SymMatrix::Zero(n, n);
    sol.converged = true;
    return sol;
  }

  double scale = median_abs(b);
  if (scale <= 0.0) scale = b.lpNorm<1>() / m;

  SymMatrix X;
  switch (config.init_mode) {
    case SolverConfig::Init::spectral:
      X = spectral_init(ens, b, scale);
      break;
    case SolverConfig::Init::zero:
      X = SymMatrix::Zero(n, n);
      break;
    case SolverConfig::Init::given:
      if (config.x_init.rows() != n || config.x_init.cols() != n)
        throw std::invalid_argument("solve: x_init dimension mismatch");
      X = project_psd(config.x_init);
      break;
  }

  SymMatrix best_X = X;
  double best_obj = objective(ens, b, X);
  std::vector<double> running_best;  // running_best[k-1] = best objective up to k
  running_best.reserve(static_cast<std::size_t>(config.max_iters));

  for (int k = 1; k <= config.max_iters; ++k) {
    const Vec r = apply(ens, X) - b;
    const double obj = r.lpNorm<1>();
    if (obj < best_obj) {
      best_obj = obj;
      best_X = X;
    }
    sol.history.emplace_back(k, obj);
    running_best.push_back(best_obj);
    sol.iterations = k;

    // Flatness of the running best over the trailing window.
    if (k >= kMinItersBeforeStop && k > kConvergenceWindow) {
      const double prior_best = running_best[k - 1 - kConvergenceWindow];
      const double denom = std::max(std::abs(prior_best), scale * m * 1e-12);
      if ((prior_best - best_obj) / denom < config.tol_obj) {
        sol.converged = true;
        break;
      }
    }

    double delta = 0.0;
    if (config.smoothing_delta_init > 0.0) {
      delta = scale * config.smoothing_delta_init *
              std::pow(config.smoothing_decay, (k - 1) / kSmoothingInterval);
      if (delta < scale * 1e-14) delta = 0.0;
    }

    Vec g(m);
    if (delta > 0.0) {
      g = r.array() / (r.array().square() + delta * delta).sqrt();
    } else {
      g = r.array().sign();
    }

    SymMatrix dir = apply_adjoint(ens, g) / m;
    const double dir_norm = dir.norm();
    if (dir_norm < 1e-300) {
      sol.converged = true;
      break;
    }
    const double step = config.step_c * scale / std::sqrt(static_cast<double>(k));
    X = project_psd(X - (step / dir_norm) * dir);
  }

  sol.x_hat = std::move(best_X);
  sol.objective = objective(ens, b, sol.x_hat);
  return sol;
}

Vec extract_signal(const SymMatrix& x_hat) {
  Eigen::SelfAdjointEigenSolver<SymMatrix> eig(0.5 * (x_hat + x_hat.transpose()));
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("extract_signal: eigendecomposition failed");
  const int n = static_cast<int>(x_hat.rows());
  const double lambda1 = eig.eigenvalues()[n - 1];
  if (lambda1 <= 0.0) return Vec::Zero(n);
  Vec v = eig.eigenvectors().col(n - 1);
  for (int i = 0; i < n; ++i) {
    if (v[i] != 0.0) {
      if (v[i] < 0.0) v = -v;
      break;
    }
  }
  return std::sqrt(lambda1) * v;
}

double signal_error(const Vec& x_hat, const Vec& x0) {
  if (x_hat.size() != x0.size())
    throw std::invalid_argument("signal_error: dimension mismatch");
  return std::min((x_hat - x0).norm(), (x_hat + x0).norm());
}

}  // namespace rpl

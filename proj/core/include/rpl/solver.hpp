// Robust-PhaseLift solver: minimize ||A(X) - b||_1 subject to X >= 0 by
// projected subgradient descent with an optional smoothed-sign warm-up.
//
// Each iteration takes the direction A*(g)/m with g_i = sgn(r_i) (or the
// pseudo-sign r_i/sqrt(r_i^2 + delta^2) while the smoothing homotopy is
// active), normalizes it in Frobenius norm, steps by step_c * scale /
// sqrt(k), and projects back onto the PSD cone.  scale is the median of
// |b_i|, which makes the whole iteration positively homogeneous in b and
// insensitive to the gross outlier entries.  The best-objective iterate is
// returned.

#ifndef RPL_SOLVER_HPP
#define RPL_SOLVER_HPP

#include <utility>
#include <vector>

#include "rpl/sensing.hpp"

namespace rpl {

struct SolverConfig {
  int max_iters = 5000;
  double step_c = 1.0;
  // Converged when the running-best objective improves by less than this
  // relative amount over a trailing 50-iteration window.
  double tol_obj = 1e-9;
  // Initial pseudo-sign width as a fraction of the problem scale; halves
  // every 500 iterations; 0 disables smoothing.
  double smoothing_delta_init = 1e-2;
  double smoothing_decay = 0.5;
  enum class Init { spectral, zero, given };
  Init init_mode = Init::spectral;
  SymMatrix x_init;  // used when init_mode == given

  void validate() const;
};

struct Solution {
  SymMatrix x_hat;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<std::pair<int, double>> history;  // (iter, objective)
};

// Frobenius-nearest PSD matrix: eigendecompose, clip negative eigenvalues.
SymMatrix project_psd(const SymMatrix& X);

// ||A(X) - b||_1
double objective(const SensingEnsemble& ens, const Vec& b, const SymMatrix& X);

Solution solve(const SensingEnsemble& ens, const Vec& b,
               const SolverConfig& config = SolverConfig{});

// x_hat = sqrt(lambda_1) v_1 from the top eigenpair; the first nonzero
// coordinate of v_1 is made positive.  An all-zero (or negative
// semidefinite) matrix yields the zero vector.
Vec extract_signal(const SymMatrix& x_hat);

// min over the global sign: min_k || x_hat - (-1)^k x0 ||_2
double signal_error(const Vec& x_hat, const Vec& x0);

}  // namespace rpl

#endif  // RPL_SOLVER_HPP

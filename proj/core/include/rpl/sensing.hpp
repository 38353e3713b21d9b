// Gaussian rank-one measurement ensemble: the lifted linear operator
// A(X) = (a_i^T X a_i)_i, its adjoint A*(y) = sum_i y_i a_i a_i^T, tangent
// space projections at a unit vector, and the noise generators, including
// the adversarial outlier construction z = A_S(H_T) with S the support of
// the largest floor(s m) entries of |A(H_T)|.

#ifndef RPL_SENSING_HPP
#define RPL_SENSING_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace rpl {

using Vec = Eigen::VectorXd;
using SymMatrix = Eigen::MatrixXd;

// Correlation minimizing the balance ratio; the adversarial construction
// plants a tangent direction with this correlation.  compute_sstar recovers
// it from scratch.
inline constexpr double kRhoStar = 0.795;

struct SensingEnsemble {
  Eigen::MatrixXd vectors;  // m x n, row i is a_i^T
  std::uint64_t seed = 0;

  int m() const { return static_cast<int>(vectors.rows()); }
  int n() const { return static_cast<int>(vectors.cols()); }
};

struct NoiseSpec {
  Vec omega;                      // length m; empty means zero
  std::vector<int> z_support;     // sorted, strictly increasing
  std::vector<double> z_values;   // aligned with z_support
  double s = 0.0;

  Vec z_dense(int m) const;
  void validate(int m) const;
};

struct TangentFrame {
  explicit TangentFrame(Vec x);
  const Vec& x() const { return x_; }

 private:
  Vec x_;
};

// floor(s*m) with a nudge so decimal fractions like 0.29 * 100 land on the
// intended integer.
int outlier_count(double s, int m);

// Indices of the k largest |v_i| (ties broken by lower index), returned in
// increasing index order.
std::vector<int> top_magnitude_support(const Vec& v, int k);

// Rows i.i.d. N(0,1) from the given seed; same (m, n, seed) is bit-identical.
SensingEnsemble sample_ensemble(int m, int n, std::uint64_t seed);

Vec apply(const SensingEnsemble& ens, const SymMatrix& X);

// A(x y^T + y x^T) without forming the lift: component i is
// 2 <x, a_i> <y, a_i>.
Vec apply_tangent_fast(const SensingEnsemble& ens, const Vec& x, const Vec& y);

SymMatrix apply_adjoint(const SensingEnsemble& ens, const Vec& y);

// X_T = P X + (I-P) X P and X_Tperp = (I-P) X (I-P) with P = x x^T.
std::pair<SymMatrix, SymMatrix> project_tangent(const TangentFrame& frame,
                                                const SymMatrix& X);

// Support of size floor(s m) chosen uniformly at random, values
// +-magnitude with Rademacher signs.
NoiseSpec gen_rademacher_outliers(int m, double s, double magnitude,
                                  std::uint64_t seed);

struct AdversarialOutliers {
  NoiseSpec noise;
  SymMatrix h_tangent;  // the planted tangent direction H_T
};

// Counterexample construction: H_T has top-left 2x2 block
// [[2 rho*, sqrt(1-rho*^2)], [sqrt(1-rho*^2), 0]]; S collects the
// floor(s m) largest |A(H_T)_i| (ties to the lower index) and
// z = A_S(H_T).
AdversarialOutliers gen_adversarial_outliers(const SensingEnsemble& ens, double s,
                                             double rho_star = kRhoStar);

// b = A(X0) + omega + z.
Vec measure(const SensingEnsemble& ens, const SymMatrix& X0, const NoiseSpec& noise);

// Binary ensemble snapshot: magic "RPLENS1", little-endian u64 m, n, seed,
// then m*n float64 row-major.
void save_ensemble(const SensingEnsemble& ens, const std::string& path);
SensingEnsemble load_ensemble(const std::string& path);

}  // namespace rpl

#endif  // RPL_SENSING_HPP

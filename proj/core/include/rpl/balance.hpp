// Balance function H(rho, s), minimum balance function H*(s), and the
// numerical computation of the critical outlier fraction s* with its
// minimizing correlation rho*.
//
//   H(rho, s)  = [int_0^{F^-1(1-s)} - int_{F^-1(1-s)}^inf] z f_rho(z) dz
//              = 2 * partial_first_moment(rho, F^-1(1-s)) - E|Z_rho|
//   H*(s)      = min_{rho in [0,1]} sqrt(2/(1+rho^2)) H(rho, s)
//
// s* is found by the split procedure: for each rho solve for the threshold
// t_rho that halves int z f_rho dz, set s_rho = 1 - F_rho(t_rho), and
// minimize s_rho over rho.  H*(s*) = 0 and s* ~= 0.1185 at rho* ~= 0.795.

#ifndef RPL_BALANCE_HPP
#define RPL_BALANCE_HPP

#include <map>
#include <memory>
#include <vector>

#include "rpl/product_distribution.hpp"

namespace rpl {

// Memoizes AbsProductDist instances by rho (keys quantized to 1e-9) so grid
// sweeps reuse the lazily built CDF tables.  Not thread-safe; the balance
// computations are single-threaded.
class DistCache {
 public:
  explicit DistCache(QuadratureConfig quad = QuadratureConfig{}) : quad_(quad) {}
  const AbsProductDist& get(double rho);

 private:
  QuadratureConfig quad_;
  std::map<long long, std::unique_ptr<AbsProductDist>> by_key_;
};

double balance_h(const AbsProductDist& dist, double s);
double balance_h(Correlation rho, double s,
                 const QuadratureConfig& quad = QuadratureConfig{});

struct HstarPoint {
  double value = 0.0;
  double argmin_rho = 0.0;
};

// Global minimum of sqrt(2/(1+rho^2)) H(rho, s) over rho in [0,1]: coarse
// grid (step 0.01) plus golden-section refinement to |drho| <= 1e-5, ties
// broken toward smaller rho.
HstarPoint hstar(double s, DistCache& cache);
HstarPoint hstar(double s, const QuadratureConfig& quad = QuadratureConfig{});

// t_rho with partial_first_moment(rho, t_rho) = mean/2 (the G(rho,t)=0 curve).
double balanced_threshold(const AbsProductDist& dist);

// s_rho = 1 - F_rho(t_rho), the fraction at which H(rho, .) crosses zero.
double balance_ratio(const AbsProductDist& dist);

struct TCurvePoint {
  double rho = 0.0;
  double t_rho = 0.0;
  double s_rho = 0.0;
};

struct HstarSample {
  double s = 0.0;
  double hstar = 0.0;
  double argmin_rho = 0.0;
};

struct BalanceSolution {
  double s_star = 0.0;
  double rho_star = 0.0;
  std::vector<TCurvePoint> t_curve;        // rho grid, step 0.005
  std::vector<HstarSample> hstar_samples;  // s grid, step 0.01 + refinement
  double lhat0 = 0.0;  // |slope| of H* at s* (empirical, finite differences)
  double Lhat0 = 0.0;  // max |slope| of H* over the s grid (empirical)
};

// Minimize balance_ratio over rho (grid step 0.005 + golden-section refine)
// and sample H* on s in {0, 0.01, ..., 1} with 1e-4 refinement around the
// zero crossing.
BalanceSolution compute_sstar(const QuadratureConfig& quad = QuadratureConfig{});

}  // namespace rpl

#endif  // RPL_BALANCE_HPP

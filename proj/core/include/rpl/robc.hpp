// Empirical evaluation of the s-robust outlier bound condition
//
//   (1/m) min_{|S| <= sm} [ ||A_{S^c}(X)||_1 - ||A_S(X)||_1 ] >= C(s) ||X||_F
//
// over the tangent set T = {x y^T + y x^T}.  The minimizing subset is the
// top-floor(sm) entries of |A(X)|, which turns the exponential min into a
// sort.  The population value for a direction pair with correlation rho is
// sqrt(2/(1+rho^2)) H(rho, s); its minimum over rho is H*(s).

#ifndef RPL_ROBC_HPP
#define RPL_ROBC_HPP

#include <cstdint>
#include <vector>

#include "rpl/product_distribution.hpp"
#include "rpl/sensing.hpp"

namespace rpl {

struct RobcTrial {
  double rho = 0.0;
  double ratio = 0.0;
};

struct RobcReport {
  double s = 0.0;
  int trials = 0;
  double min_ratio = 0.0;
  double mean_ratio = 0.0;
  double theoretical = 0.0;  // H*(s)
  std::vector<RobcTrial> per_trial;
};

// (1/m) [||A_{S*^c}(X)||_1 - ||A_{S*}(X)||_1] / ||X||_F for X = x y^T + y x^T,
// S* = indices of the floor(sm) largest |A(X)_i|.
double worst_case_ratio(const SensingEnsemble& ens, const Vec& x, const Vec& y,
                        double s);

// Samples direction pairs: even trials uniform on the sphere, odd trials
// stratified over rho in {0, 0.1, ..., 1} via y = rho x + sqrt(1-rho^2) x_perp,
// so the minimizing correlation is always probed.
RobcReport empirical_lower_bound(const SensingEnsemble& ens, double s, int trials,
                                 std::uint64_t seed, int threads = 1);

// Population value sqrt(2/(1+rho^2)) H(rho, s).
double expected_ratio(Correlation rho, double s,
                      const QuadratureConfig& quad = QuadratureConfig{});

// max over random mixed-sign symmetric X of (1/m)||A(X)||_1 / ||X||_1
// (nuclear norm); the one-sided upper RIP holds when this stays below 1.5.
double upper_rip_check(const SensingEnsemble& ens, int trials, std::uint64_t seed);

}  // namespace rpl

#endif  // RPL_ROBC_HPP

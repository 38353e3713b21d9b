// Test-only oracles, independent of the library's computational paths:
// an adaptive Simpson integrator (the library uses Gauss-Kronrod), a Taylor
// erf, exhaustive subset minimization, and a correlated Gaussian pair
// sampler for Monte Carlo cross-checks.

#ifndef RPL_TESTS_ORACLES_HPP
#define RPL_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "rpl/rng.hpp"
#include "rpl/sensing.hpp"

namespace oracles {

inline double simpson_rec(const std::function<double(double)>& f, double a, double b,
                          double fa, double fm, double fb, double whole, double tol,
                          int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double tol = 1e-13) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// K0 from its integral definition, via the scaled integrand
// e^x K0(x) = int_0^inf e^{-x (cosh t - 1)} dt.
inline double bessel_k0(double x) {
  return std::exp(-x) *
         simpson([x](double t) { return std::exp(-x * (std::cosh(t) - 1.0)); }, 0.0,
                 13.0, 1e-14);
}

// Taylor series erf; adequate to ~1e-13 for |x| <= 3.5.
inline double erf_series(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int k = 1; k < 80; ++k) {
    term *= -x2 / k;
    sum += term / (2 * k + 1);
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum * 2.0 / std::sqrt(M_PI);
}

inline double normal_cdf(double x) { return 0.5 * (1.0 + erf_series(x / std::sqrt(2.0))); }
inline double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

// Root of f on [lo, hi] by plain bisection (f(lo), f(hi) must bracket).
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Exhaustive minimum of (1/m)[||A_{S^c}(X)||_1 - ||A_S(X)||_1]/||X||_F over
// all subsets |S| <= k; feasible for m <= 20 or so.  Sums run in increasing
// index order, matching the library's canonical accumulation.
inline double subset_min_ratio(const rpl::Vec& v, int k, double x_fro, int m) {
  double total = 0.0;
  for (int i = 0; i < m; ++i) total += std::abs(v[i]);
  double best = total;  // S empty
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    if (__builtin_popcount(mask) > k) continue;
    double on = 0.0;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) on += std::abs(v[i]);
    const double value = total - 2.0 * on;
    if (value < best) best = value;
  }
  return best / (m * x_fro);
}

// Samples |X * Y| for a correlated standard normal pair.
struct ProductSampler {
  rpl::Rng rng;
  double rho, comp;
  ProductSampler(double rho_, std::uint64_t seed)
      : rng(seed), rho(rho_), comp(std::sqrt(1.0 - rho_ * rho_)) {}
  double operator()() {
    const double x = rng.normal();
    const double y = rho * x + comp * rng.normal();
    return std::abs(x * y);
  }
};

}  // namespace oracles

#endif  // RPL_TESTS_ORACLES_HPP

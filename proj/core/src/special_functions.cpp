#include "rpl/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace rpl {

namespace {

template <int N>
double eval_polynomial(const double (&poly)[N], double x) {
  double result = poly[N - 1];
  for (int i = N - 2; i >= 0; --i) result = result * x + poly[i];
  return result;
}

// Minimax rational coefficients for K0 on (0,1] and (1,inf),
// Russon & Blair, Chalk River Report AECL-3461, 1969.
constexpr double kP1[] = {2.4708152720399552679e+03, 5.9169059852270512312e+03,
                          4.6850901201934832188e+02, 1.1999463724910714109e+01,
                          1.3166052564989571850e-01, 5.8599221412826100000e-04};
constexpr double kQ1[] = {2.1312714303849120380e+04, -2.4994418972832303646e+02,
                          1.0};
constexpr double kP2[] = {-1.6128136304458193998e+06, -3.7333769444840079748e+05,
                          -1.7984434409411765813e+04, -2.9501657892958843865e+02,
                          -1.6414452837299064100e+00};
constexpr double kQ2[] = {-1.6128136304458193998e+06, 2.9865713163054025489e+04,
                          -2.5064972445877992730e+02, 1.0};
constexpr double kP3[] = {1.1600249425076035558e+02, 2.3444738764199315021e+03,
                          1.8321525870183537725e+04, 7.1557062783764037541e+04,
                          1.5097646353289914539e+05, 1.7398867902565686251e+05,
                          1.0577068948034021957e+05, 3.1075408980684392399e+04,
                          3.6832589957340267940e+03, 1.1394980557384778174e+02};
constexpr double kQ3[] = {9.2556599177304839811e+01, 1.8821890840982713696e+03,
                          1.4847228371802360957e+04, 5.8824616785857027752e+04,
                          1.2689839587977598727e+05, 1.5144644673520157801e+05,
                          9.7418829762268075784e+04, 3.1474655750295278825e+04,
                          4.4329628889746408858e+03, 2.0013443064949242491e+02,
                          1.0};

double k0_small(double x) {
  // x in (0, 1]
  const double y = x * x;
  const double r1 = eval_polynomial(kP1, y) / eval_polynomial(kQ1, y);
  const double r2 = eval_polynomial(kP2, y) / eval_polynomial(kQ2, y);
  return r1 - std::log(x) * r2;
}

double k0_large_scaled(double x) {
  // x in (1, inf); returns exp(x) * K0(x)
  const double y = 1.0 / x;
  return eval_polynomial(kP3, y) / eval_polynomial(kQ3, y) / std::sqrt(x);
}

}  // namespace

double bessel_k0(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_k0: argument must be > 0");
  if (x <= 1.0) return k0_small(x);
  return std::exp(-x) * k0_large_scaled(x);
}

double bessel_k0_scaled(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_k0_scaled: argument must be > 0");
  if (x <= 1.0) return std::exp(x) * k0_small(x);
  return k0_large_scaled(x);
}

double std_normal_pdf(double x) {
  constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double std_normal_cdf(double x) {
  constexpr double kInvSqrt2 = 0.707106781186547524400844362105;
  return 0.5 * std::erfc(-x * kInvSqrt2);
}

double truncated_gaussian_moment(int k, double a) {
  if (!(a > 0.0))
    throw std::domain_error("truncated_gaussian_moment: a must be > 0");
  const double two_phi_m1 = std::erf(a * 0.707106781186547524400844362105);
  const double phi_a = std_normal_pdf(a);
  switch (k) {
    case 2:
      return two_phi_m1 - 2.0 * a * phi_a;
    case 4:
      return 3.0 * two_phi_m1 - 2.0 * phi_a * (a * a * a + 3.0 * a);
    case 6:
      return 15.0 * two_phi_m1 -
             2.0 * phi_a * (std::pow(a, 5) + 5.0 * a * a * a + 15.0 * a);
    default:
      throw std::domain_error("truncated_gaussian_moment: k must be 2, 4 or 6");
  }
}

}  // namespace rpl

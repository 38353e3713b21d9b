// Scalar special functions backing the product distribution and the dual
// certificate constants: modified Bessel K0, standard normal pdf/cdf, and
// truncated Gaussian moments E[X^k 1(|X| <= a)].

#ifndef RPL_SPECIAL_FUNCTIONS_HPP
#define RPL_SPECIAL_FUNCTIONS_HPP

namespace rpl {

// Modified Bessel function of the second kind of order zero, K0(x).
// Piecewise minimax rational approximation: for x <= 1 a polynomial pair with
// the -log(x) term, for x > 1 exp(-x)/sqrt(x) times a rational in 1/x
// (coefficients from Russon & Blair, AECL-3461). Accurate to ~1e-15 relative.
// Throws std::domain_error for x <= 0 (K0 has a logarithmic pole at 0).
double bessel_k0(double x);

// exp(x) * K0(x); avoids underflow for large x so that densities near
// rho = +-1 can be assembled in a cancellation-free form.
double bessel_k0_scaled(double x);

// Standard normal density exp(-x^2/2)/sqrt(2 pi).
double std_normal_pdf(double x);

// Standard normal CDF, accurate to ~1e-16 relative (erfc-based).
double std_normal_cdf(double x);

// E[X^k 1(|X| <= a)] for X ~ N(0,1), closed form; k must be 2, 4 or 6 and
// a > 0.  k=2, a=3 gives alpha0 ~= 0.9709; k=4 gives beta0 ~= 2.6728;
// k=6 gives eta0 ~= 11.2102.
double truncated_gaussian_moment(int k, double a);

}  // namespace rpl

#endif  // RPL_SPECIAL_FUNCTIONS_HPP

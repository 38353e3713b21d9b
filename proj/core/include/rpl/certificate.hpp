// Inexact dual certificate Y = A*(y) for a unit signal x0 and a fixed
// outlier support S:
//
//   y_i = [beta0 - <a_i,x0>^2 1(|<a_i,x0>| <= 3)] / m        i in S^c
//   y_i = -(9 - beta0)/m * sgn(z_i)                          i in S
//
// with beta0 = E X^4 1(|X|<=3).  The certificate is validated by the
// smallest eigenvalue of Y restricted to T_perp (computed after deflating
// x0, so no spurious zero mode along x0 appears) and the Frobenius norm of
// the tangent component Y_T.

#ifndef RPL_CERTIFICATE_HPP
#define RPL_CERTIFICATE_HPP

#include <utility>
#include <vector>

#include "rpl/sensing.hpp"

namespace rpl {

struct CertificateReport {
  double lambda_min_tperp = 0.0;
  double y_t_frobenius = 0.0;
  double coeff_max_offsupport = 0.0;  // max |y_i| off the support
  bool coeff_on_support_ok = false;   // y_i == -(9-beta0)/m sgn(z_i) exactly
  double alpha0 = 0.0, beta0 = 0.0, eta0 = 0.0;
};

// Smallest eigenvalue of (I - x0 x0^T) Y (I - x0 x0^T) on the orthogonal
// complement of x0 (an (n-1)-dimensional restriction).
double min_eig_tperp(const SymMatrix& Y, const Vec& x0);

// signs[j] is sgn(z_i) for support[j]; the construction uses eps_i = -sgn(z_i)
// so the subgradient condition holds by construction.
std::pair<SymMatrix, Vec> construct_dual(const SensingEnsemble& ens, const Vec& x0,
                                         const std::vector<int>& support,
                                         const std::vector<double>& signs);

CertificateReport verify_certificate(const SymMatrix& Y, const Vec& y,
                                     const SensingEnsemble& ens, const Vec& x0,
                                     const std::vector<int>& support,
                                     const std::vector<double>& signs);

}  // namespace rpl

#endif  // RPL_CERTIFICATE_HPP

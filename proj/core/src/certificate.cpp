#include "rpl/certificate.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "rpl/special_functions.hpp"

namespace rpl {

namespace {

void check_support(const std::vector<int>& support, const std::vector<double>& signs,
                   int m) {
  if (support.size() != signs.size())
    throw std::invalid_argument("certificate: support/sign size mismatch");
  for (std::size_t j = 0; j < support.size(); ++j) {
    if (support[j] < 0 || support[j] >= m)
      throw std::invalid_argument("certificate: support index out of range");
    if (signs[j] != 1.0 && signs[j] != -1.0)
      throw std::invalid_argument("certificate: signs must be +-1");
  }
}

void check_unit(const Vec& x0) {
  if (std::abs(x0.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("certificate: x0 must be a unit vector");
}

}  // namespace

double min_eig_tperp(const SymMatrix& Y, const Vec& x0) {
  check_unit(x0);
  const int n = static_cast<int>(x0.size());
  if (Y.rows() != n || Y.cols() != n)
    throw std::invalid_argument("min_eig_tperp: dimension mismatch");
  // Orthonormal basis of span(x0)^perp from a Householder QR of x0.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(x0);
  const Eigen::MatrixXd Q = qr.householderQ();
  const Eigen::MatrixXd basis = Q.rightCols(n - 1);
  Eigen::SelfAdjointEigenSolver<SymMatrix> eig(basis.transpose() * Y * basis);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("min_eig_tperp: eigendecomposition failed");
  return eig.eigenvalues().minCoeff();
}

std::pair<SymMatrix, Vec> construct_dual(const SensingEnsemble& ens, const Vec& x0,
                                         const std::vector<int>& support,
                                         const std::vector<double>& signs) {
  check_unit(x0);
  if (x0.size() != ens.n())
    throw std::invalid_argument("construct_dual: x0 dimension mismatch");
  check_support(support, signs, ens.m());

  const int m = ens.m();
  const double beta0 = truncated_gaussian_moment(4, 3.0);
  const double kappa = (9.0 - beta0) / m;

  const Vec proj = ens.vectors * x0;  // <a_i, x0>
  Vec y(m);
  for (int i = 0; i < m; ++i) {
    const double p = proj[i];
    const double truncated = std::abs(p) <= 3.0 ? p * p : 0.0;
    y[i] = (beta0 - truncated) / m;
  }
  for (std::size_t j = 0; j < support.size(); ++j)
    y[support[j]] = -kappa * signs[j];

  return {apply_adjoint(ens, y), std::move(y)};
}

CertificateReport verify_certificate(const SymMatrix& Y, const Vec& y,
                                     const SensingEnsemble& ens, const Vec& x0,
                                     const std::vector<int>& support,
                                     const std::vector<double>& signs) {
  check_unit(x0);
  check_support(support, signs, ens.m());
  if (y.size() != ens.m())
    throw std::invalid_argument("verify_certificate: y length mismatch");

  CertificateReport report;
  report.alpha0 = truncated_gaussian_moment(2, 3.0);
  report.beta0 = truncated_gaussian_moment(4, 3.0);
  report.eta0 = truncated_gaussian_moment(6, 3.0);

  report.lambda_min_tperp = min_eig_tperp(Y, x0);
  const auto [yt, ytperp] = project_tangent(TangentFrame(x0), Y);
  report.y_t_frobenius = yt.norm();

  const double kappa = (9.0 - report.beta0) / ens.m();
  std::vector<bool> on_support(static_cast<std::size_t>(ens.m()), false);
  report.coeff_on_support_ok = true;
  for (std::size_t j = 0; j < support.size(); ++j) {
    on_support[static_cast<std::size_t>(support[j])] = true;
    if (y[support[j]] != -kappa * signs[j]) report.coeff_on_support_ok = false;
  }
  report.coeff_max_offsupport = 0.0;
  for (int i = 0; i < ens.m(); ++i) {
    if (!on_support[static_cast<std::size_t>(i)])
      report.coeff_max_offsupport =
          std::max(report.coeff_max_offsupport, std::abs(y[i]));
  }
  return report;
}

}  // namespace rpl

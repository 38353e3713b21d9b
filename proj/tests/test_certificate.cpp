#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "rpl/certificate.hpp"
#include "rpl/rng.hpp"
#include "rpl/sensing.hpp"
#include "rpl/special_functions.hpp"

using rpl::apply_adjoint;
using rpl::CertificateReport;
using rpl::construct_dual;
using rpl::gen_rademacher_outliers;
using rpl::min_eig_tperp;
using rpl::NoiseSpec;
using rpl::project_tangent;
using rpl::sample_ensemble;
using rpl::SensingEnsemble;
using rpl::SymMatrix;
using rpl::TangentFrame;
using rpl::Vec;
using rpl::verify_certificate;

namespace {

std::vector<double> signs_of(const NoiseSpec& spec) {
  std::vector<double> s;
  s.reserve(spec.z_values.size());
  for (double v : spec.z_values) s.push_back(v > 0 ? 1.0 : -1.0);
  return s;
}

double operator_norm(const SymMatrix& X) {
  Eigen::SelfAdjointEigenSolver<SymMatrix> eig(X);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("coefficients: sup-norm bound and exact on-support identity") {
  const int n = 12, m = 600;
  const SensingEnsemble ens = sample_ensemble(m, n, 42);
  Vec x0 = Vec::Zero(n);
  x0[0] = 1.0;
  const NoiseSpec spec = gen_rademacher_outliers(m, 0.1, 1.0, 43);
  const auto signs = signs_of(spec);
  const auto [Y, y] = construct_dual(ens, x0, spec.z_support, signs);

  const double beta0 = rpl::truncated_gaussian_moment(4, 3.0);
  const double kappa = (9.0 - beta0) / m;
  CHECK(y.cwiseAbs().maxCoeff() <= kappa + 1e-18);

  const CertificateReport rep =
      verify_certificate(Y, y, ens, x0, spec.z_support, signs);
  CHECK(rep.coeff_on_support_ok);  // exact, no tolerance
  CHECK(rep.coeff_max_offsupport <= kappa);
  CHECK(rep.alpha0 == doctest::Approx(0.9709).epsilon(5e-4));
  CHECK(rep.beta0 == doctest::Approx(2.6728).epsilon(5e-4));
  CHECK(rep.eta0 == doctest::Approx(11.2102).epsilon(5e-4));

  // y_i = -(9-beta0)/m sgn(z_i) on the support, checked directly
  for (std::size_t j = 0; j < spec.z_support.size(); ++j)
    CHECK(y[spec.z_support[j]] == -kappa * signs[j]);

  // Y is in the range of the adjoint
  CHECK((Y - apply_adjoint(ens, y)).norm() <= 1e-12 * Y.norm());
}

TEST_CASE("empty support: certificate is the truncated-moment part alone") {
  const int n = 6, m = 80;
  const SensingEnsemble ens = sample_ensemble(m, n, 3);
  Vec x0 = Vec::Zero(n);
  x0[0] = 1.0;
  const auto [Y, y] = construct_dual(ens, x0, {}, {});
  const double beta0 = rpl::truncated_gaussian_moment(4, 3.0);
  for (int i = 0; i < m; ++i) {
    const double p = ens.vectors.row(i).dot(x0);
    const double expected = (beta0 - (std::abs(p) <= 3.0 ? p * p : 0.0)) / m;
    CHECK(y[i] == doctest::Approx(expected).epsilon(1e-14));
  }
  CHECK(Y.rows() == n);
}

TEST_CASE("synthetic certificates: spectral and tangent diagnostics") {
  const int n = 8;
  Vec x0 = Vec::Zero(n);
  x0[0] = 1.0;

  // Y = c (I - x0 x0^T): lambda_min on Tperp is c, tangent part vanishes
  const double c = 0.7;
  const SymMatrix proj =
      c * (SymMatrix::Identity(n, n) - x0 * x0.transpose());
  CHECK(min_eig_tperp(proj, x0) == doctest::Approx(c).epsilon(1e-12));
  const auto [pt, pp] = project_tangent(TangentFrame(x0), proj);
  CHECK(pt.norm() <= 1e-12);

  // Y = x0 x0^T: zero on Tperp, unit tangent norm
  const SymMatrix rank1 = x0 * x0.transpose();
  CHECK(min_eig_tperp(rank1, x0) == doctest::Approx(0.0).epsilon(1e-12));
  const auto [rt, rp] = project_tangent(TangentFrame(x0), rank1);
  CHECK(rt.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("||Y_T||_F^2 = |x0' Y x0|^2 + 2||(I-P) Y x0||^2") {
  rpl::Rng rng(7);
  const int n = 9;
  Vec x0(n);
  for (int i = 0; i < n; ++i) x0[i] = rng.normal();
  x0.normalize();
  for (int trial = 0; trial < 6; ++trial) {
    SymMatrix G(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
    const SymMatrix Y = 0.5 * (G + G.transpose());
    const auto [yt, yp] = project_tangent(TangentFrame(x0), Y);
    const double quad = x0.dot(Y * x0);
    const Vec off = Y * x0 - quad * x0;
    const double identity = quad * quad + 2.0 * off.squaredNorm();
    CHECK(yt.squaredNorm() == doctest::Approx(identity).epsilon(1e-10));
  }
}

TEST_CASE("certificate expectation: Tperp block near (1-s)(beta0-alpha0) I") {
  // average over 200 fresh ensembles at n=20, m=4000, s=0.05
  const int n = 20, m = 4000, trials = 200;
  const double s = 0.05;
  Vec x0 = Vec::Zero(n);
  x0[0] = 1.0;
  SymMatrix mean_Y = SymMatrix::Zero(n, n);
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t ts = rpl::derive_seed(1234, {static_cast<std::uint64_t>(t)});
    const SensingEnsemble ens = sample_ensemble(m, n, ts);
    const NoiseSpec spec =
        gen_rademacher_outliers(m, s, 1.0, rpl::derive_seed(ts, {0x7a}));
    const auto [Y, y] = construct_dual(ens, x0, spec.z_support, signs_of(spec));
    mean_Y += Y;
  }
  mean_Y /= trials;

  const double alpha0 = rpl::truncated_gaussian_moment(2, 3.0);
  const double beta0 = rpl::truncated_gaussian_moment(4, 3.0);
  const double frac = 1.0 - static_cast<double>(rpl::outlier_count(s, m)) / m;
  const double c = frac * (beta0 - alpha0);

  // Tperp restriction within 5% of c I in operator norm
  const SymMatrix tperp_dev = mean_Y.bottomRightCorner(n - 1, n - 1) -
                              c * SymMatrix::Identity(n - 1, n - 1);
  CHECK(operator_norm(tperp_dev) <= 0.05 * c);

  // tangent part near zero on the same relative scale
  const auto [yt, yp] = project_tangent(TangentFrame(x0), mean_Y);
  CHECK(operator_norm(yt) <= 0.05 * c);
}

TEST_CASE("regime trends: medians over m in {2000, 4000, 8000}") {
  const int n = 20;
  const double s = 0.05;
  Vec x0 = Vec::Zero(n);
  x0[0] = 1.0;
  std::vector<double> median_lambda, median_yt;
  for (int m : {2000, 4000, 8000}) {
    std::vector<double> lambdas, yts;
    for (int t = 0; t < 5; ++t) {
      const std::uint64_t ts = rpl::derive_seed(
          55, {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(t)});
      const SensingEnsemble ens = sample_ensemble(m, n, ts);
      const NoiseSpec spec =
          gen_rademacher_outliers(m, s, 1.0, rpl::derive_seed(ts, {0x7a}));
      const auto signs = signs_of(spec);
      const auto [Y, y] = construct_dual(ens, x0, spec.z_support, signs);
      const CertificateReport rep =
          verify_certificate(Y, y, ens, x0, spec.z_support, signs);
      lambdas.push_back(rep.lambda_min_tperp);
      yts.push_back(rep.y_t_frobenius);
    }
    std::sort(lambdas.begin(), lambdas.end());
    std::sort(yts.begin(), yts.end());
    median_lambda.push_back(lambdas[2]);
    median_yt.push_back(yts[2]);
  }
  // lambda_min trends up toward (1-s)(beta0-alpha0), ||Y_T||_F trends down
  CHECK(median_lambda[0] < median_lambda[1]);
  CHECK(median_lambda[1] < median_lambda[2]);
  CHECK(median_yt[0] > median_yt[1]);
  CHECK(median_yt[1] > median_yt[2]);
  const double limit = 0.95 * (rpl::truncated_gaussian_moment(4, 3.0) -
                               rpl::truncated_gaussian_moment(2, 3.0));
  CHECK(median_lambda[2] < limit);
  CHECK(median_lambda[2] > 0.5 * limit);
}

TEST_CASE("input validation") {
  const SensingEnsemble ens = sample_ensemble(30, 4, 9);
  Vec bad = Vec::Constant(4, 1.0);  // not unit
  CHECK_THROWS_AS(construct_dual(ens, bad, {}, {}), std::invalid_argument);
  Vec x0 = Vec::Zero(4);
  x0[0] = 1.0;
  CHECK_THROWS_AS(construct_dual(ens, x0, {40}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(construct_dual(ens, x0, {3}, {0.5}), std::invalid_argument);
  CHECK_THROWS_AS(construct_dual(ens, x0, {3, 4}, {1.0}), std::invalid_argument);
}

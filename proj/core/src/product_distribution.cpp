#include "rpl/product_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rpl/special_functions.hpp"

namespace rpl {

namespace {

constexpr double kPi = 3.141592653589793238462643383280;
constexpr double kEulerGamma = 0.577215664901532860606512090082;
// |rho| at or above this uses the chi-square(1) limit law for CDF/quantile.
constexpr double kChiRouteThreshold = 0.999;
// Split point for the log singularity of f_rho at z = 0.
constexpr double kSingularitySplit = 1e-8;
constexpr int kCacheSize = 2048;

double chi_square_pdf(double z) {
  // density of X^2 for X ~ N(0,1)
  return std::exp(-0.5 * z) / std::sqrt(2.0 * kPi * z);
}

double chi_square_cdf(double t) {
  return t <= 0.0 ? 0.0 : std::erf(std::sqrt(0.5 * t));
}

// E[X^2 1(X^2 <= t)] = 2 Phi(sqrt(t)) - 1 - 2 sqrt(t) phi(sqrt(t))
double chi_square_partial_first_moment(double t) {
  if (t <= 0.0) return 0.0;
  return truncated_gaussian_moment(2, std::sqrt(t));
}

}  // namespace

Correlation::Correlation(double rho) : rho_(rho) {
  if (!(rho >= -1.0 && rho <= 1.0))
    throw std::domain_error("Correlation: rho must lie in [-1, 1]");
}

double pdf_signed(Correlation rho, double z) {
  const double r = rho.value();
  if (r == 1.0) {
    if (!(z > 0.0))
      throw std::domain_error("pdf_signed: Z_1 = X^2 is supported on z > 0");
    return chi_square_pdf(z);
  }
  if (r == -1.0) {
    if (!(z < 0.0))
      throw std::domain_error("pdf_signed: Z_{-1} = -X^2 is supported on z < 0");
    return chi_square_pdf(-z);
  }
  if (z == 0.0)
    throw std::domain_error("pdf_signed: density has a logarithmic pole at z = 0");
  const double one_minus_r2 = (1.0 - r) * (1.0 + r);
  const double az = std::abs(z);
  // exp(r z/(1-r^2)) K0(|z|/(1-r^2)) == exp(-|z|/(1 +- r)) * [e^u K0(u)]
  const double expo = z > 0.0 ? -az / (1.0 + r) : -az / (1.0 - r);
  return std::exp(expo) * bessel_k0_scaled(az / one_minus_r2) /
         (kPi * std::sqrt(one_minus_r2));
}

double pdf_abs(Correlation rho, double z) {
  if (!(z > 0.0)) throw std::domain_error("pdf_abs: z must be > 0");
  const double r = std::abs(rho.value());
  if (r == 1.0) return chi_square_pdf(z);
  const double one_minus_r2 = (1.0 - r) * (1.0 + r);
  const double folded = std::exp(-z / (1.0 + r)) + std::exp(-z / (1.0 - r));
  return folded * bessel_k0_scaled(z / one_minus_r2) /
         (kPi * std::sqrt(one_minus_r2));
}

double mean_abs(Correlation rho) {
  const double r = std::abs(rho.value());
  return (2.0 / kPi) * (std::sqrt((1.0 - r) * (1.0 + r)) + r * std::asin(r));
}

AbsProductDist::AbsProductDist(Correlation rho, QuadratureConfig quad)
    : rho_(Correlation(std::abs(rho.value()))),
      quad_(quad),
      mean_(mean_abs(rho)),
      chi_branch_(std::abs(rho.value()) >= kChiRouteThreshold) {
  quad_.validate();
}

double AbsProductDist::density_for_integration(double z) const {
  return chi_branch_ ? chi_square_pdf(z) : pdf_abs(rho_, z);
}

// int_a^b z^pow f_rho(z) dz for a >= kSingularitySplit.  Below z = 1 the
// integral runs in w = ln z, where the log-singular density becomes a smooth
// integrand; above it the integrand is evaluated directly.
double AbsProductDist::weighted_integral(int pow, double a, double b,
                                         const char* what) const {
  if (b <= a) return 0.0;
  double value = 0.0;
  const double split = std::clamp(1.0, a, b);
  if (a < split) {
    value += integrate_or_throw(
        [this, pow](double w) {
          const double z = std::exp(w);
          const double weight = pow == 0 ? z : z * z;
          return weight * pdf_abs(rho_, z);
        },
        std::log(a), std::log(split), quad_, what);
  }
  if (split < b) {
    value += integrate_or_throw(
        [this, pow](double z) {
          const double weight = pow == 0 ? 1.0 : z;
          return weight * pdf_abs(rho_, z);
        },
        split, b, quad_, what);
  }
  return value;
}

double AbsProductDist::cdf(double t) const {
  if (t < 0.0) throw std::domain_error("cdf: t must be >= 0");
  if (t == 0.0) return 0.0;
  if (chi_branch_) return chi_square_cdf(t);

  const double r = rho_.value();
  const double one_minus_r2 = (1.0 - r) * (1.0 + r);
  const double c = kPi * std::sqrt(one_minus_r2);

  // Analytic head on [0, min(t, eps)]: f ~ (2/c) (-ln(z/(2(1-r^2))) - gamma).
  const double head_end = std::min(t, kSingularitySplit);
  const double head = (2.0 / c) * head_end *
                      (1.0 - kEulerGamma + std::log(2.0 * one_minus_r2 / head_end));
  if (t <= kSingularitySplit) return head;

  const double upper = std::min(t, quad_.truncation_z);
  return std::min(1.0, head + weighted_integral(0, head_end, upper, "cdf_abs"));
}

double AbsProductDist::partial_first_moment(double t) const {
  if (t < 0.0) throw std::domain_error("partial_first_moment: t must be >= 0");
  if (t == 0.0) return 0.0;
  if (chi_branch_) return chi_square_partial_first_moment(t);

  const double r = rho_.value();
  const double one_minus_r2 = (1.0 - r) * (1.0 + r);
  const double c = kPi * std::sqrt(one_minus_r2);

  const double head_end = std::min(t, kSingularitySplit);
  const double head =
      (2.0 / c) * 0.5 * head_end * head_end *
      (0.5 - kEulerGamma + std::log(2.0 * one_minus_r2 / head_end));
  if (t <= kSingularitySplit) return head;

  const double upper = std::min(t, quad_.truncation_z);
  return head + weighted_integral(1, head_end, upper, "partial_first_moment");
}

const AbsProductDist::CdfCache& AbsProductDist::cache() const {
  std::call_once(cache_once_, [this] {
    auto c = std::make_unique<CdfCache>();
    c->z.resize(kCacheSize + 1);
    c->f.resize(kCacheSize + 1);
    // Cubic grading: dense near the log singularity, coarse in the far tail.
    for (int i = 0; i <= kCacheSize; ++i) {
      const double u = static_cast<double>(i) / kCacheSize;
      c->z[i] = quad_.truncation_z * u * u * u;
    }
    c->z[0] = 0.0;
    c->f[0] = 0.0;
    QuadratureConfig panel = quad_;
    panel.max_subdivisions = 8;
    double acc = cdf(c->z[1]);
    c->f[1] = acc;
    for (int i = 1; i < kCacheSize; ++i) {
      acc += integrate([this](double z) { return density_for_integration(z); },
                       c->z[i], c->z[i + 1], panel)
                 .value;
      c->f[i + 1] = std::min(acc, 1.0);
    }
    // Enforce monotonicity against rounding.
    for (int i = 1; i <= kCacheSize; ++i) c->f[i] = std::max(c->f[i], c->f[i - 1]);
    cache_ = std::move(c);
  });
  return *cache_;
}

double AbsProductDist::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("quantile: p must lie in (0, 1)");

  double lo = 0.0, hi = quad_.truncation_z;
  if (chi_branch_) {
    // Monotone closed-form CDF; no cache needed.
  } else {
    const CdfCache& c = cache();
    auto it = std::lower_bound(c.f.begin(), c.f.end(), p);
    const std::size_t j = static_cast<std::size_t>(it - c.f.begin());
    if (j >= c.f.size()) {
      lo = c.z[c.z.size() - 2];
    } else {
      hi = c.z[j];
      lo = j > 0 ? c.z[j - 1] : 0.0;
    }
  }

  // Safeguarded Newton on the exact CDF with the analytic density as slope.
  double flo = lo > 0.0 ? cdf(lo) - p : -p;
  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 80; ++iter) {
    const double err = cdf(t) - p;
    if (std::abs(err) <= 1e-12) return t;
    if ((err < 0.0) == (flo < 0.0)) {
      lo = t;
      flo = err;
    } else {
      hi = t;
    }
    const double slope = density_for_integration(std::max(t, 1e-300));
    double next = t - err / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    t = next;
  }
  return t;
}

double cdf_abs(Correlation rho, double t, const QuadratureConfig& quad) {
  return AbsProductDist(rho, quad).cdf(t);
}

double quantile_abs(Correlation rho, double p, const QuadratureConfig& quad) {
  return AbsProductDist(rho, quad).quantile(p);
}

double partial_first_moment(Correlation rho, double t, const QuadratureConfig& quad) {
  return AbsProductDist(rho, quad).partial_first_moment(t);
}

}  // namespace rpl

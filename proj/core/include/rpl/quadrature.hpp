// Adaptive Gauss-Kronrod (G7,K15) quadrature on finite intervals.
//
// The semi-infinite integrals over the product-of-Gaussians density are
// truncated at QuadratureConfig::truncation_z, chosen so the integrand has
// decayed below abs_tol * 1e-2 (the density tails decay at least like
// exp(-z/2)).

#ifndef RPL_QUADRATURE_HPP
#define RPL_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace rpl {

struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 200;
  double truncation_z = 80.0;

  void validate() const {
    if (!(abs_tol > 0)) throw std::invalid_argument("QuadratureConfig: abs_tol must be > 0");
    if (!(rel_tol > 0)) throw std::invalid_argument("QuadratureConfig: rel_tol must be > 0");
    if (max_subdivisions < 1)
      throw std::invalid_argument("QuadratureConfig: max_subdivisions must be >= 1");
    if (!(truncation_z > 0))
      throw std::invalid_argument("QuadratureConfig: truncation_z must be > 0");
  }
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
  bool converged = false;
};

namespace detail {

// K15 abscissae/weights and embedded G7 weights (QUADPACK dqk15).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
void gk15(const F& f, double a, double b, double& value, double& error) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = f(center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);

  double fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    const double sum = fv1[j] + fv2[j];
    resk += kWgk[j] * sum;
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
  }

  const double mean = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

  value = resk * half;
  error = std::abs((resk - resg) * half);
  resasc *= std::abs(half);
  resabs *= std::abs(half);
  if (resasc != 0.0 && error != 0.0)
    error = resasc * std::min(1.0, std::pow(200.0 * error / resasc, 1.5));
  const double round = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
  if (round > error) error = round;
}

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

}  // namespace detail

template <typename F>
QuadratureResult integrate(const F& f, double a, double b,
                           const QuadratureConfig& cfg = QuadratureConfig{}) {
  cfg.validate();
  QuadratureResult res;
  if (a == b) {
    res.converged = true;
    return res;
  }

  detail::Panel root{a, b, 0.0, 0.0};
  detail::gk15(f, a, b, root.value, root.error);

  std::priority_queue<detail::Panel> queue;
  queue.push(root);
  double total_value = root.value;
  double total_error = root.error;

  while (res.subdivisions < cfg.max_subdivisions) {
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total_value));
    if (total_error <= tol) break;

    detail::Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    detail::Panel left{worst.a, mid, 0.0, 0.0};
    detail::Panel right{mid, worst.b, 0.0, 0.0};
    detail::gk15(f, left.a, left.b, left.value, left.error);
    detail::gk15(f, right.a, right.b, right.value, right.error);

    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++res.subdivisions;
  }

  res.value = total_value;
  res.error = total_error;
  res.converged =
      total_error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total_value));
  return res;
}

template <typename F>
double integrate_or_throw(const F& f, double a, double b, const QuadratureConfig& cfg,
                          const char* what) {
  QuadratureResult r = integrate(f, a, b, cfg);
  if (!r.converged)
    throw std::runtime_error(std::string("quadrature failed to converge: ") + what +
                             " (error estimate " + std::to_string(r.error) + ")");
  return r.value;
}

}  // namespace rpl

#endif  // RPL_QUADRATURE_HPP

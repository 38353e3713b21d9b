#include "rpl/balance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rpl {

namespace {

double weight(double rho) { return std::sqrt(2.0 / (1.0 + rho * rho)); }

// Golden-section minimization on [a, b]; assumes the evaluated grid already
// brackets the minimum.  Returns the best (x, f(x)) seen, ties toward
// smaller x.
template <typename F>
std::pair<double, double> golden_min(const F& f, double a, double b, double tol) {
  constexpr double kInvPhi = 0.618033988749894848204586834366;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  double best_x = f1 <= f2 ? x1 : x2;
  double best_f = std::min(f1, f2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
    const double fx = std::min(f1, f2);
    const double xx = f1 <= f2 ? x1 : x2;
    if (fx < best_f || (fx == best_f && xx < best_x)) {
      best_f = fx;
      best_x = xx;
    }
  }
  return {best_x, best_f};
}

}  // namespace

const AbsProductDist& DistCache::get(double rho) {
  const long long key = std::llround(rho * 1e9);
  auto it = by_key_.find(key);
  if (it == by_key_.end()) {
    it = by_key_
             .emplace(key, std::make_unique<AbsProductDist>(Correlation(rho), quad_))
             .first;
  }
  return *it->second;
}

double balance_h(const AbsProductDist& dist, double s) {
  if (!(s >= 0.0 && s <= 1.0))
    throw std::domain_error("balance_h: s must lie in [0, 1]");
  if (s == 0.0) return dist.mean();
  if (s == 1.0) return -dist.mean();
  const double t = dist.quantile(1.0 - s);
  return 2.0 * dist.partial_first_moment(t) - dist.mean();
}

double balance_h(Correlation rho, double s, const QuadratureConfig& quad) {
  return balance_h(AbsProductDist(rho, quad), s);
}

HstarPoint hstar(double s, DistCache& cache) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("hstar: s must lie in [0, 1]");
  auto eval = [&](double rho) { return weight(rho) * balance_h(cache.get(rho), s); };

  constexpr int kGrid = 100;
  int best_i = 0;
  double best_f = eval(0.0);
  for (int i = 1; i <= kGrid; ++i) {
    const double f = eval(static_cast<double>(i) / kGrid);
    if (f < best_f) {
      best_f = f;
      best_i = i;
    }
  }
  const double lo = std::max(0.0, (best_i - 1.0) / kGrid);
  const double hi = std::min(1.0, (best_i + 1.0) / kGrid);
  auto [rho, value] = golden_min(eval, lo, hi, 1e-5);
  if (best_f < value) {
    value = best_f;
    rho = static_cast<double>(best_i) / kGrid;
  }
  return {value, rho};
}

HstarPoint hstar(double s, const QuadratureConfig& quad) {
  DistCache cache(quad);
  return hstar(s, cache);
}

double balanced_threshold(const AbsProductDist& dist) {
  const double target = 0.5 * dist.mean();
  double lo = 0.0, hi = dist.quad().truncation_z;
  // Safeguarded Newton: partial'(t) = t f(t).
  double t = 1.0;
  for (int iter = 0; iter < 80; ++iter) {
    const double err = dist.partial_first_moment(t) - target;
    if (std::abs(err) <= 1e-12) return t;
    if (err < 0.0)
      lo = t;
    else
      hi = t;
    const double slope = t * dist.pdf(t);
    double next = slope > 0.0 ? t - err / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    t = next;
  }
  return t;
}

double balance_ratio(const AbsProductDist& dist) {
  return 1.0 - dist.cdf(balanced_threshold(dist));
}

BalanceSolution compute_sstar(const QuadratureConfig& quad) {
  BalanceSolution out;
  DistCache cache(quad);

  constexpr int kGrid = 200;  // rho step 0.005
  out.t_curve.reserve(kGrid + 1);
  int best_i = 0;
  double best_s = 2.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double rho = static_cast<double>(i) / kGrid;
    const AbsProductDist& dist = cache.get(rho);
    const double t = balanced_threshold(dist);
    const double s = 1.0 - dist.cdf(t);
    out.t_curve.push_back({rho, t, s});
    if (s < best_s) {
      best_s = s;
      best_i = i;
    }
  }

  auto ratio_at = [&](double rho) { return balance_ratio(cache.get(rho)); };
  const double lo = std::max(0.0, (best_i - 1.0) / kGrid);
  const double hi = std::min(1.0, (best_i + 1.0) / kGrid);
  auto [rho_star, s_star] = golden_min(ratio_at, lo, hi, 1e-5);
  if (best_s < s_star) {
    s_star = best_s;
    rho_star = static_cast<double>(best_i) / kGrid;
  }
  out.s_star = s_star;
  out.rho_star = rho_star;

  // H* on the coarse s grid.
  for (int i = 0; i <= 100; ++i) {
    const double s = static_cast<double>(i) / 100.0;
    const HstarPoint p = hstar(s, cache);
    out.hstar_samples.push_back({s, p.value, p.argmin_rho});
  }

  // Refine with step 1e-4 across the zero crossing.
  std::size_t cross = out.hstar_samples.size();
  for (std::size_t i = 1; i < out.hstar_samples.size(); ++i) {
    if (out.hstar_samples[i - 1].hstar > 0.0 && out.hstar_samples[i].hstar <= 0.0) {
      cross = i;
      break;
    }
  }
  if (cross < out.hstar_samples.size()) {
    const double s_lo = out.hstar_samples[cross - 1].s;
    const double s_hi = out.hstar_samples[cross].s;
    for (double s = s_lo + 1e-4; s < s_hi - 0.5e-4; s += 1e-4) {
      const HstarPoint p = hstar(s, cache);
      out.hstar_samples.push_back({s, p.value, p.argmin_rho});
    }
    std::sort(out.hstar_samples.begin(), out.hstar_samples.end(),
              [](const HstarSample& a, const HstarSample& b) { return a.s < b.s; });
  }

  // Empirical slope witnesses; only existence of these bounds is known, so
  // the measured values are reported rather than checked against targets.
  double max_slope = 0.0;
  for (std::size_t i = 1; i < out.hstar_samples.size(); ++i) {
    const auto& a = out.hstar_samples[i - 1];
    const auto& b = out.hstar_samples[i];
    if (b.s > a.s)
      max_slope = std::max(max_slope, std::abs((b.hstar - a.hstar) / (b.s - a.s)));
  }
  out.Lhat0 = max_slope;
  {
    const double ds = 1e-3;
    const double s_minus = std::max(0.0, out.s_star - ds);
    const double s_plus = std::min(1.0, out.s_star + ds);
    const double h_minus = hstar(s_minus, cache).value;
    const double h_plus = hstar(s_plus, cache).value;
    out.lhat0 = std::abs((h_minus - h_plus) / (s_plus - s_minus));
  }
  return out;
}

}  // namespace rpl

#include "rpl/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "rpl/rng.hpp"

namespace rpl {

namespace {

void check_dims(int got, int want, const char* what) {
  if (got != want)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(got) + " vs " + std::to_string(want) +
                                ")");
}

}  // namespace

std::vector<int> top_magnitude_support(const Vec& v, int k) {
  std::vector<int> idx(static_cast<std::size_t>(v.size()));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    const double va = std::abs(v[a]), vb = std::abs(v[b]);
    if (va != vb) return va > vb;
    return a < b;
  });
  idx.resize(static_cast<std::size_t>(k));
  std::sort(idx.begin(), idx.end());
  return idx;
}

Vec NoiseSpec::z_dense(int m) const {
  Vec z = Vec::Zero(m);
  for (std::size_t j = 0; j < z_support.size(); ++j) z[z_support[j]] = z_values[j];
  return z;
}

void NoiseSpec::validate(int m) const {
  if (z_support.size() != z_values.size())
    throw std::invalid_argument("NoiseSpec: support/value size mismatch");
  if (static_cast<int>(z_support.size()) > outlier_count(s, m))
    throw std::invalid_argument("NoiseSpec: support larger than floor(s m)");
  for (std::size_t j = 0; j < z_support.size(); ++j) {
    if (z_support[j] < 0 || z_support[j] >= m)
      throw std::invalid_argument("NoiseSpec: support index out of range");
    if (j > 0 && z_support[j] <= z_support[j - 1])
      throw std::invalid_argument("NoiseSpec: support must be strictly increasing");
  }
  if (omega.size() != 0 && omega.size() != m)
    throw std::invalid_argument("NoiseSpec: omega length mismatch");
  if (omega.size() != 0 && !omega.allFinite())
    throw std::invalid_argument("NoiseSpec: omega must be finite");
}

TangentFrame::TangentFrame(Vec x) : x_(std::move(x)) {
  if (std::abs(x_.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("TangentFrame: x must be a unit vector");
}

int outlier_count(double s, int m) {
  if (!(s >= 0.0 && s <= 1.0))
    throw std::domain_error("outlier fraction s must lie in [0, 1]");
  const int k = static_cast<int>(std::floor(s * m + 1e-9));
  return std::clamp(k, 0, m);
}

SensingEnsemble sample_ensemble(int m, int n, std::uint64_t seed) {
  if (m < 1 || n < 1)
    throw std::invalid_argument("sample_ensemble: m and n must be >= 1");
  SensingEnsemble ens;
  ens.seed = seed;
  ens.vectors.resize(m, n);
  Rng rng(seed);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) ens.vectors(i, j) = rng.normal();
  return ens;
}

Vec apply(const SensingEnsemble& ens, const SymMatrix& X) {
  check_dims(static_cast<int>(X.rows()), ens.n(), "apply");
  check_dims(static_cast<int>(X.cols()), ens.n(), "apply");
  // component i = a_i^T X a_i
  return ((ens.vectors * X).cwiseProduct(ens.vectors)).rowwise().sum();
}

Vec apply_tangent_fast(const SensingEnsemble& ens, const Vec& x, const Vec& y) {
  check_dims(static_cast<int>(x.size()), ens.n(), "apply_tangent_fast");
  check_dims(static_cast<int>(y.size()), ens.n(), "apply_tangent_fast");
  return 2.0 * (ens.vectors * x).cwiseProduct(ens.vectors * y);
}

SymMatrix apply_adjoint(const SensingEnsemble& ens, const Vec& y) {
  check_dims(static_cast<int>(y.size()), ens.m(), "apply_adjoint");
  SymMatrix Y = ens.vectors.transpose() * y.asDiagonal() * ens.vectors;
  return 0.5 * (Y + Y.transpose());
}

std::pair<SymMatrix, SymMatrix> project_tangent(const TangentFrame& frame,
                                                const SymMatrix& X) {
  const Vec& x = frame.x();
  check_dims(static_cast<int>(X.rows()), static_cast<int>(x.size()), "project_tangent");
  const Vec w = X * x;
  const double xXx = x.dot(w);
  SymMatrix XT = x * w.transpose() + w * x.transpose() - xXx * (x * x.transpose());
  SymMatrix XTperp = X - XT;
  return {std::move(XT), std::move(XTperp)};
}

NoiseSpec gen_rademacher_outliers(int m, double s, double magnitude,
                                  std::uint64_t seed) {
  if (!(magnitude > 0.0))
    throw std::invalid_argument("gen_rademacher_outliers: magnitude must be > 0");
  const int k = outlier_count(s, m);
  NoiseSpec spec;
  spec.s = s;
  Rng rng(seed);
  // Partial Fisher-Yates over [0, m).
  std::vector<int> pool(static_cast<std::size_t>(m));
  std::iota(pool.begin(), pool.end(), 0);
  for (int j = 0; j < k; ++j) {
    const int pick = j + static_cast<int>(rng.below(static_cast<std::uint64_t>(m - j)));
    std::swap(pool[j], pool[pick]);
  }
  pool.resize(static_cast<std::size_t>(k));
  std::sort(pool.begin(), pool.end());
  spec.z_support = std::move(pool);
  spec.z_values.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) spec.z_values.push_back(magnitude * rng.rademacher());
  return spec;
}

AdversarialOutliers gen_adversarial_outliers(const SensingEnsemble& ens, double s,
                                             double rho_star) {
  if (ens.n() < 2)
    throw std::invalid_argument("gen_adversarial_outliers: requires n >= 2");
  const int n = ens.n();
  const double off = std::sqrt((1.0 - rho_star) * (1.0 + rho_star));

  SymMatrix ht = SymMatrix::Zero(n, n);
  ht(0, 0) = 2.0 * rho_star;
  ht(0, 1) = off;
  ht(1, 0) = off;

  // H_T = x1 y1^T + y1 x1^T with x1 = e1, y1 = rho* e1 + sqrt(1-rho*^2) e2.
  Vec x1 = Vec::Zero(n), y1 = Vec::Zero(n);
  x1[0] = 1.0;
  y1[0] = rho_star;
  y1[1] = off;
  const Vec measured = apply_tangent_fast(ens, x1, y1);

  const int k = outlier_count(s, ens.m());
  AdversarialOutliers out;
  out.h_tangent = std::move(ht);
  out.noise.s = s;
  out.noise.z_support = top_magnitude_support(measured, k);
  out.noise.z_values.reserve(out.noise.z_support.size());
  for (int idx : out.noise.z_support) out.noise.z_values.push_back(measured[idx]);
  return out;
}

Vec measure(const SensingEnsemble& ens, const SymMatrix& X0, const NoiseSpec& noise) {
  noise.validate(ens.m());
  Vec b = apply(ens, X0);
  if (noise.omega.size() != 0) b += noise.omega;
  for (std::size_t j = 0; j < noise.z_support.size(); ++j)
    b[noise.z_support[j]] += noise.z_values[j];
  return b;
}

namespace {

constexpr char kEnsembleMagic[7] = {'R', 'P', 'L', 'E', 'N', 'S', '1'};

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};

void write_u64_le(std::FILE* f, std::uint64_t v, bool& ok) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  ok = ok && std::fwrite(buf, 1, 8, f) == 8;
}

void write_f64_le(std::FILE* f, double v, bool& ok) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  write_u64_le(f, bits, ok);
}

std::uint64_t read_u64_le(std::FILE* f, bool& ok) {
  unsigned char buf[8];
  ok = ok && std::fread(buf, 1, 8, f) == 8;
  std::uint64_t v = 0;
  if (ok)
    for (int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
  return v;
}

double read_f64_le(std::FILE* f, bool& ok) {
  const std::uint64_t bits = read_u64_le(f, ok);
  double v = 0.0;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

}  // namespace

void save_ensemble(const SensingEnsemble& ens, const std::string& path) {
  std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "wb"));
  if (!f) throw std::runtime_error("save_ensemble: cannot open " + path);
  bool ok = std::fwrite(kEnsembleMagic, 1, 7, f.get()) == 7;
  write_u64_le(f.get(), static_cast<std::uint64_t>(ens.m()), ok);
  write_u64_le(f.get(), static_cast<std::uint64_t>(ens.n()), ok);
  write_u64_le(f.get(), ens.seed, ok);
  for (int i = 0; ok && i < ens.m(); ++i)
    for (int j = 0; ok && j < ens.n(); ++j) write_f64_le(f.get(), ens.vectors(i, j), ok);
  if (!ok) throw std::runtime_error("save_ensemble: write failed for " + path);
}

SensingEnsemble load_ensemble(const std::string& path) {
  std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "rb"));
  if (!f) throw std::runtime_error("load_ensemble: cannot open " + path);
  char magic[7] = {};
  if (std::fread(magic, 1, 7, f.get()) != 7 ||
      std::memcmp(magic, kEnsembleMagic, 7) != 0)
    throw std::runtime_error("load_ensemble: bad magic in " + path);
  bool ok = true;
  const std::uint64_t m = read_u64_le(f.get(), ok);
  const std::uint64_t n = read_u64_le(f.get(), ok);
  const std::uint64_t seed = read_u64_le(f.get(), ok);
  if (!ok) throw std::runtime_error("load_ensemble: truncated header in " + path);
  if (m < 1 || n < 1 || m > (1u << 26) || n > (1u << 20))
    throw std::runtime_error("load_ensemble: implausible dimensions in " + path);
  SensingEnsemble ens;
  ens.seed = seed;
  ens.vectors.resize(static_cast<int>(m), static_cast<int>(n));
  for (int i = 0; i < static_cast<int>(m); ++i)
    for (int j = 0; j < static_cast<int>(n); ++j)
      ens.vectors(i, j) = read_f64_le(f.get(), ok);
  if (!ok) throw std::runtime_error("load_ensemble: truncated payload in " + path);
  return ens;
}

}  // namespace rpl

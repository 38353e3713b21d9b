#include "rpl/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "rpl/certificate.hpp"
#include "rpl/csv.hpp"
#include "rpl/parallel.hpp"
#include "rpl/rng.hpp"

namespace rpl {

int resolve_threads(int requested) {
  if (requested >= 1) return requested;
  if (const char* env = std::getenv("RPL_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

std::uint64_t cell_seed(std::uint64_t base, int n, int m, double s, int trial) {
  return derive_seed(base, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(m),
                            static_cast<std::uint64_t>(std::llround(s * 1e6)),
                            static_cast<std::uint64_t>(trial)});
}

}  // namespace

double recovery_trial(int n, int m, double s, NoiseKind noise, double magnitude,
                      std::uint64_t trial_seed, const SolverConfig& solver,
                      std::vector<std::pair<int, double>>* history) {
  const SensingEnsemble ens = sample_ensemble(m, n, trial_seed);
  Vec x0 = Vec::Zero(n);
  x0[0] = 0.1;
  const SymMatrix X0 = x0 * x0.transpose();

  NoiseSpec spec;
  if (noise == NoiseKind::adversarial) {
    spec = gen_adversarial_outliers(ens, s).noise;
  } else {
    spec = gen_rademacher_outliers(m, s, magnitude, derive_seed(trial_seed, {0x7a}));
  }
  const Vec b = measure(ens, X0, spec);
  const Solution sol = solve(ens, b, solver);
  if (history) *history = sol.history;
  return (sol.x_hat - X0).norm() / X0.norm();
}

std::vector<PhaseCell> run_phase_diagram(const PhaseDiagramConfig& cfg) {
  if (cfg.n_values.empty() || cfg.m_values.empty() || cfg.s_values.empty())
    throw std::invalid_argument("phase-diagram: n, m and s ranges must be nonempty");
  if (cfg.trials < 1) throw std::invalid_argument("phase-diagram: trials must be >= 1");

  struct Job {
    int n, m, trial;
    double s;
  };
  std::vector<Job> jobs;
  for (int n : cfg.n_values)
    for (int m : cfg.m_values)
      for (double s : cfg.s_values)
        for (int t = 0; t < cfg.trials; ++t) jobs.push_back({n, m, t, s});

  std::vector<double> rel_errors(jobs.size());
  parallel_for_index(jobs.size(), cfg.threads, [&](std::size_t j) {
    const Job& job = jobs[j];
    rel_errors[j] = recovery_trial(job.n, job.m, job.s, cfg.noise,
                                   cfg.rademacher_magnitude,
                                   cell_seed(cfg.seed, job.n, job.m, job.s, job.trial),
                                   cfg.solver);
  });

  std::vector<PhaseCell> cells;
  std::size_t j = 0;
  for (int n : cfg.n_values) {
    for (int m : cfg.m_values) {
      for (double s : cfg.s_values) {
        PhaseCell cell{n, m, s, 0.0, 0.0, cfg.trials};
        for (int t = 0; t < cfg.trials; ++t, ++j) {
          cell.mean_rel_error += rel_errors[j];
          if (rel_errors[j] < 0.1) cell.success_rate += 1.0;
        }
        cell.success_rate /= cfg.trials;
        cell.mean_rel_error /= cfg.trials;
        cells.push_back(cell);
      }
    }
  }

  if (!cfg.out_path.empty()) {
    CsvWriter csv(cfg.out_path,
                  {"n", "m", "s", "success_rate", "mean_rel_error", "trials"});
    for (const PhaseCell& c : cells)
      csv.row({static_cast<double>(c.n), static_cast<double>(c.m), c.s, c.success_rate,
               c.mean_rel_error, static_cast<double>(c.trials)});
    csv.close();
  }
  return cells;
}

std::vector<SweepPoint> run_threshold_sweep(const ThresholdSweepConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("threshold-sweep: trials must be >= 1");
  const int n = cfg.n;
  const int m = cfg.m > 0 ? cfg.m : 300 * n;
  std::vector<double> s_values = cfg.s_values;
  if (s_values.empty()) {
    for (int i = 0; i <= 100; ++i) s_values.push_back(i / 100.0);
  }

  struct Job {
    double s;
    int trial;
  };
  std::vector<Job> jobs;
  for (double s : s_values)
    for (int t = 0; t < cfg.trials; ++t) jobs.push_back({s, t});

  std::vector<double> rel_errors(jobs.size());
  std::vector<std::pair<int, double>> first_history;
  parallel_for_index(jobs.size(), cfg.threads, [&](std::size_t j) {
    const Job& job = jobs[j];
    rel_errors[j] = recovery_trial(
        n, m, job.s, NoiseKind::adversarial, 1.0,
        cell_seed(cfg.seed, n, m, job.s, job.trial), cfg.solver,
        (j == 0 && !cfg.history_path.empty()) ? &first_history : nullptr);
  });

  std::vector<SweepPoint> points;
  std::size_t j = 0;
  for (double s : s_values) {
    SweepPoint p{s, 0.0};
    for (int t = 0; t < cfg.trials; ++t, ++j) p.rel_error += rel_errors[j];
    p.rel_error /= cfg.trials;
    points.push_back(p);
  }

  if (!cfg.out_path.empty()) {
    CsvWriter csv(cfg.out_path, {"s", "rel_error"});
    for (const SweepPoint& p : points) csv.row({p.s, p.rel_error});
    csv.close();
  }
  if (!cfg.history_path.empty()) {
    CsvWriter csv(cfg.history_path, {"iter", "objective"});
    for (const auto& [iter, obj] : first_history)
      csv.row({static_cast<double>(iter), obj});
    csv.close();
  }
  return points;
}

BalanceSolution run_balance(const BalanceRunConfig& cfg) {
  BalanceSolution solution = compute_sstar(cfg.quad);
  if (!cfg.out_path.empty()) {
    CsvWriter curve(cfg.out_path, {"rho", "t_rho", "s_rho"});
    for (const TCurvePoint& p : solution.t_curve) curve.row({p.rho, p.t_rho, p.s_rho});
    curve.close();

    CsvWriter hs(cfg.out_path + ".hstar.csv", {"s", "hstar"});
    for (const HstarSample& p : solution.hstar_samples) hs.row({p.s, p.hstar});
    hs.close();

    CsvWriter summary(cfg.out_path + ".summary.csv",
                      {"s_star", "rho_star", "hstar_at_0", "hstar_at_1", "lhat0",
                       "Lhat0"});
    const double h0 = solution.hstar_samples.front().hstar;
    const double h1 = solution.hstar_samples.back().hstar;
    summary.row({solution.s_star, solution.rho_star, h0, h1, solution.lhat0,
                 solution.Lhat0});
    summary.close();
  }
  return solution;
}

RobcReport run_robc(const RobcRunConfig& cfg) {
  const SensingEnsemble ens =
      sample_ensemble(cfg.m, cfg.n, derive_seed(cfg.seed, {0x656e73}));
  RobcReport report =
      empirical_lower_bound(ens, cfg.s, cfg.trials, cfg.seed, cfg.threads);
  if (!cfg.out_path.empty()) {
    CsvWriter csv(cfg.out_path, {"trial", "rho", "ratio"});
    for (int t = 0; t < report.trials; ++t)
      csv.row({static_cast<double>(t), report.per_trial[t].rho,
               report.per_trial[t].ratio});
    csv.raw_row({"min", "", format_number(report.min_ratio)});
    csv.raw_row({"mean", "", format_number(report.mean_ratio)});
    csv.raw_row({"theoretical", "", format_number(report.theoretical)});
    csv.close();
  }
  return report;
}

CertificateStudy run_certificate(const CertificateRunConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("certificate: trials must be >= 1");
  CertificateStudy study;
  study.rows.resize(static_cast<std::size_t>(cfg.trials));
  std::vector<SymMatrix> certificates(static_cast<std::size_t>(cfg.trials));

  parallel_for_index(static_cast<std::size_t>(cfg.trials), cfg.threads,
                     [&](std::size_t t) {
                       const std::uint64_t ts =
                           cell_seed(cfg.seed, cfg.n, cfg.m, cfg.s, static_cast<int>(t));
                       const SensingEnsemble ens = sample_ensemble(cfg.m, cfg.n, ts);
                       Vec x0 = Vec::Zero(cfg.n);
                       x0[0] = 1.0;
                       const NoiseSpec spec = gen_rademacher_outliers(
                           cfg.m, cfg.s, 1.0, derive_seed(ts, {0x7a}));
                       std::vector<double> signs;
                       signs.reserve(spec.z_values.size());
                       for (double v : spec.z_values) signs.push_back(v > 0 ? 1.0 : -1.0);
                       const auto [Y, y] = construct_dual(ens, x0, spec.z_support, signs);
                       const CertificateReport rep =
                           verify_certificate(Y, y, ens, x0, spec.z_support, signs);
                       study.rows[t] = {static_cast<int>(t), rep.lambda_min_tperp,
                                        rep.y_t_frobenius, rep.coeff_on_support_ok};
                       certificates[t] = Y;
                     });

  study.mean_certificate = SymMatrix::Zero(cfg.n, cfg.n);
  for (const SymMatrix& Y : certificates) study.mean_certificate += Y;
  study.mean_certificate /= cfg.trials;

  if (!cfg.out_path.empty()) {
    CsvWriter csv(cfg.out_path, {"trial", "lambda_min_Tperp", "y_T_frobenius",
                                 "coeff_ok"});
    for (const CertificateTrialRow& r : study.rows)
      csv.row({static_cast<double>(r.trial), r.lambda_min_tperp, r.y_t_frobenius,
               r.coeff_ok ? 1.0 : 0.0});
    csv.close();
  }
  return study;
}

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  auto parse_one = [&](const std::string& token) {
    const std::size_t c1 = token.find(':');
    if (c1 == std::string::npos) {
      out.push_back(std::stod(token));
      return;
    }
    const std::size_t c2 = token.find(':', c1 + 1);
    const double lo = std::stod(token.substr(0, c1));
    double hi, step;
    if (c2 == std::string::npos) {
      hi = std::stod(token.substr(c1 + 1));
      step = 1.0;
    } else {
      hi = std::stod(token.substr(c1 + 1, c2 - c1 - 1));
      step = std::stod(token.substr(c2 + 1));
    }
    if (!(step > 0.0)) throw std::invalid_argument("range step must be > 0");
    const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
    for (int i = 0; i <= count; ++i) out.push_back(lo + i * step);
  };
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    parse_one(text.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_value_list(text)) out.push_back(static_cast<int>(std::llround(v)));
  return out;
}

}  // namespace rpl

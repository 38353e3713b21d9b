// Experiment orchestration: phase diagrams over (n, m, s), the failure
// threshold sweep, the balance-curve computation, and the ROBC/certificate
// studies.  Every experiment is deterministic given its flags: per-trial
// streams are derived as derive_seed(seed, {n, m, round(s*1e6), trial}), and
// trial results are reduced in index order regardless of the worker count.

#ifndef RPL_HARNESS_HPP
#define RPL_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rpl/balance.hpp"
#include "rpl/robc.hpp"
#include "rpl/sensing.hpp"
#include "rpl/solver.hpp"

namespace rpl {

enum class NoiseKind { adversarial, rademacher };

struct PhaseDiagramConfig {
  std::vector<int> n_values;
  std::vector<int> m_values;
  std::vector<double> s_values;
  int trials = 10;
  std::uint64_t seed = 1;
  int threads = 0;
  SolverConfig solver;
  NoiseKind noise = NoiseKind::adversarial;
  double rademacher_magnitude = 1.0;
  std::string out_path;
};

struct PhaseCell {
  int n = 0;
  int m = 0;
  double s = 0.0;
  double success_rate = 0.0;
  double mean_rel_error = 0.0;
  int trials = 0;
};

// Ground truth x0 = 0.1 e1, omega = 0, adversarial z (or Rademacher with
// --noise=rademacher); success means ||Xhat - X0||_F / ||X0||_F < 0.1.
std::vector<PhaseCell> run_phase_diagram(const PhaseDiagramConfig& cfg);

struct ThresholdSweepConfig {
  int n = 5;
  int m = 0;  // 0 means 300 n
  std::vector<double> s_values;  // empty means 0:1:0.01
  int trials = 1;
  std::uint64_t seed = 1;
  int threads = 0;
  SolverConfig solver;
  std::string out_path;
  std::string history_path;  // when set, dump (iter, objective) of first solve
};

struct SweepPoint {
  double s = 0.0;
  double rel_error = 0.0;  // mean over trials
};

std::vector<SweepPoint> run_threshold_sweep(const ThresholdSweepConfig& cfg);

struct BalanceRunConfig {
  QuadratureConfig quad;
  std::string out_path;  // curve; the hstar samples and the summary go to
                         // <out>.hstar.csv and <out>.summary.csv
};

BalanceSolution run_balance(const BalanceRunConfig& cfg);

struct RobcRunConfig {
  int n = 20;
  int m = 4000;
  double s = 0.0;
  int trials = 500;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out_path;
};

RobcReport run_robc(const RobcRunConfig& cfg);

struct CertificateRunConfig {
  int n = 50;
  int m = 8000;
  double s = 0.05;
  int trials = 20;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out_path;
};

struct CertificateTrialRow {
  int trial = 0;
  double lambda_min_tperp = 0.0;
  double y_t_frobenius = 0.0;
  bool coeff_ok = false;
};

struct CertificateStudy {
  std::vector<CertificateTrialRow> rows;
  // Trial-averaged certificate, for comparison against
  // (|S^c|/m)(beta0 - alpha0) I_{Tperp}.
  SymMatrix mean_certificate;
};

CertificateStudy run_certificate(const CertificateRunConfig& cfg);

// Shared helper: one recovery trial at (n, m, s); returns the relative
// Frobenius error against X0 = x0 x0^T with x0 = 0.1 e1.
double recovery_trial(int n, int m, double s, NoiseKind noise, double magnitude,
                      std::uint64_t trial_seed, const SolverConfig& solver,
                      std::vector<std::pair<int, double>>* history = nullptr);

// "a,b,c" and "lo:hi:step" forms; used by the CLI for --n/--m/--s lists.
std::vector<double> parse_value_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

}  // namespace rpl

#endif  // RPL_HARNESS_HPP

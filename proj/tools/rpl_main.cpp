// rpl: Robust-PhaseLift experiments from the command line.
//
// Subcommands: balance, threshold-sweep, phase-diagram, robc, certificate,
// dist, ensemble.  Every experiment is deterministic given its flags and
// seed, independent of --threads.  Exit codes: 0 ok, 1 flag errors,
// 2 runtime failures.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rpl/balance.hpp"
#include "rpl/csv.hpp"
#include "rpl/harness.hpp"
#include "rpl/product_distribution.hpp"
#include "rpl/sensing.hpp"

namespace {

struct SolverFlags {
  int max_iters = 5000;
  double step_c = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--max-iters", max_iters, "Solver iteration budget");
    cmd->add_option("--step-c", step_c, "Subgradient step multiplier");
  }
  rpl::SolverConfig config() const {
    rpl::SolverConfig cfg;
    cfg.max_iters = max_iters;
    cfg.step_c = step_c;
    return cfg;
  }
};

int run(int argc, char** argv) {
  CLI::App app{"Robust-PhaseLift: PSD-constrained l1 phase retrieval experiments"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string format = "csv";
  app.add_option("--format", format, "Output format (csv)")
      ->check(CLI::IsMember({"csv"}));

  // balance
  auto* balance = app.add_subcommand(
      "balance", "Compute s*, rho*, the t-curve and H* samples");
  std::string balance_out;
  balance->add_option("--out", balance_out, "Curve CSV path (writes <out>, "
                                            "<out>.hstar.csv, <out>.summary.csv)")
      ->required();

  // threshold-sweep
  auto* sweep = app.add_subcommand(
      "threshold-sweep", "Relative error vs outlier fraction s (adversarial z)");
  rpl::ThresholdSweepConfig sweep_cfg;
  std::string sweep_s;
  SolverFlags sweep_solver;
  sweep->add_option("--n", sweep_cfg.n, "Signal dimension")->capture_default_str();
  sweep->add_option("--m", sweep_cfg.m, "Measurements (default 300 n)");
  sweep->add_option("--s", sweep_s, "s values, list or lo:hi:step (default 0:1:0.01)");
  sweep->add_option("--trials", sweep_cfg.trials, "Trials per s")->capture_default_str();
  sweep->add_option("--seed", sweep_cfg.seed, "Base seed")->capture_default_str();
  sweep->add_option("--threads", sweep_cfg.threads, "Worker count (0 = auto)");
  sweep->add_option("--out", sweep_cfg.out_path, "Output CSV path")->required();
  sweep->add_option("--history", sweep_cfg.history_path,
                    "Dump (iter, objective) of the first solve");
  sweep_solver.attach(sweep);

  // phase-diagram
  auto* phase = app.add_subcommand(
      "phase-diagram", "Success rate over an (n, m, s) grid");
  rpl::PhaseDiagramConfig phase_cfg;
  std::string phase_n = "3:17:2", phase_m = "20:600:40", phase_s = "0";
  std::string phase_noise = "adversarial";
  SolverFlags phase_solver;
  phase->add_option("--n", phase_n, "n values, list or lo:hi:step")
      ->capture_default_str();
  phase->add_option("--m", phase_m, "m values, list or lo:hi:step")
      ->capture_default_str();
  phase->add_option("--s", phase_s, "s values, list or lo:hi:step")
      ->capture_default_str();
  phase->add_option("--trials", phase_cfg.trials, "Trials per cell")
      ->capture_default_str();
  phase->add_option("--seed", phase_cfg.seed, "Base seed")->capture_default_str();
  phase->add_option("--threads", phase_cfg.threads, "Worker count (0 = auto)");
  phase->add_option("--noise", phase_noise, "adversarial | rademacher")
      ->check(CLI::IsMember({"adversarial", "rademacher"}));
  phase->add_option("--magnitude", phase_cfg.rademacher_magnitude,
                    "Outlier magnitude for --noise=rademacher");
  phase->add_option("--out", phase_cfg.out_path, "Output CSV path")->required();
  phase_solver.attach(phase);

  // robc
  auto* robc = app.add_subcommand(
      "robc", "Empirical s-robust outlier bound condition study");
  rpl::RobcRunConfig robc_cfg;
  robc->add_option("--n", robc_cfg.n, "Signal dimension")->capture_default_str();
  robc->add_option("--m", robc_cfg.m, "Measurements")->capture_default_str();
  robc->add_option("--s", robc_cfg.s, "Outlier fraction")->capture_default_str();
  robc->add_option("--trials", robc_cfg.trials, "Direction samples")
      ->capture_default_str();
  robc->add_option("--seed", robc_cfg.seed, "Base seed")->capture_default_str();
  robc->add_option("--threads", robc_cfg.threads, "Worker count (0 = auto)");
  robc->add_option("--out", robc_cfg.out_path, "Output CSV path")->required();

  // certificate
  auto* cert = app.add_subcommand(
      "certificate", "Dual certificate construction and verification study");
  rpl::CertificateRunConfig cert_cfg;
  cert->add_option("--n", cert_cfg.n, "Signal dimension")->capture_default_str();
  cert->add_option("--m", cert_cfg.m, "Measurements")->capture_default_str();
  cert->add_option("--s", cert_cfg.s, "Outlier fraction")->capture_default_str();
  cert->add_option("--trials", cert_cfg.trials, "Seeded trials")
      ->capture_default_str();
  cert->add_option("--seed", cert_cfg.seed, "Base seed")->capture_default_str();
  cert->add_option("--threads", cert_cfg.threads, "Worker count (0 = auto)");
  cert->add_option("--out", cert_cfg.out_path, "Output CSV path")->required();

  // dist (debug surface over the product distribution)
  auto* dist = app.add_subcommand(
      "dist", "Evaluate the |X*Y| distribution: pdf, cdf, quantile, ...");
  double dist_rho = 0.0, dist_at = 1.0;
  std::string dist_op = "pdf", dist_out;
  dist->add_option("--rho", dist_rho, "Correlation in [-1, 1]")
      ->capture_default_str();
  dist->add_option("--op", dist_op, "pdf | pdf-signed | cdf | quantile | "
                                    "partial-moment | mean")
      ->check(CLI::IsMember(
          {"pdf", "pdf-signed", "cdf", "quantile", "partial-moment", "mean"}));
  dist->add_option("--at", dist_at, "Evaluation point (z, t or p)")
      ->capture_default_str();
  dist->add_option("--out", dist_out, "Optional CSV output path");

  // ensemble (binary dump/load for experiment replay)
  auto* ensemble = app.add_subcommand(
      "ensemble", "Dump or inspect a sensing ensemble (RPLENS1 format)");
  int ens_n = 5, ens_m = 1500;
  std::uint64_t ens_seed = 1;
  std::string ens_out, ens_in;
  ensemble->add_option("--n", ens_n, "Signal dimension")->capture_default_str();
  ensemble->add_option("--m", ens_m, "Measurements")->capture_default_str();
  ensemble->add_option("--seed", ens_seed, "Seed")->capture_default_str();
  ensemble->add_option("--out", ens_out, "Write ensemble to this path");
  ensemble->add_option("--in", ens_in, "Read and summarize this ensemble");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (balance->parsed()) {
    rpl::BalanceRunConfig cfg;
    cfg.out_path = balance_out;
    const rpl::BalanceSolution sol = rpl::run_balance(cfg);
    std::printf("s_star=%s rho_star=%s\n", rpl::format_number(sol.s_star).c_str(),
                rpl::format_number(sol.rho_star).c_str());
  } else if (sweep->parsed()) {
    sweep_cfg.s_values = rpl::parse_value_list(sweep_s);
    sweep_cfg.solver = sweep_solver.config();
    rpl::run_threshold_sweep(sweep_cfg);
  } else if (phase->parsed()) {
    phase_cfg.n_values = rpl::parse_int_list(phase_n);
    phase_cfg.m_values = rpl::parse_int_list(phase_m);
    phase_cfg.s_values = rpl::parse_value_list(phase_s);
    phase_cfg.noise = phase_noise == "rademacher" ? rpl::NoiseKind::rademacher
                                                  : rpl::NoiseKind::adversarial;
    phase_cfg.solver = phase_solver.config();
    rpl::run_phase_diagram(phase_cfg);
  } else if (robc->parsed()) {
    const rpl::RobcReport report = rpl::run_robc(robc_cfg);
    std::printf("min=%s mean=%s theoretical=%s\n",
                rpl::format_number(report.min_ratio).c_str(),
                rpl::format_number(report.mean_ratio).c_str(),
                rpl::format_number(report.theoretical).c_str());
  } else if (cert->parsed()) {
    rpl::run_certificate(cert_cfg);
  } else if (dist->parsed()) {
    const rpl::Correlation rho(dist_rho);
    double value = 0.0;
    if (dist_op == "pdf") {
      value = rpl::pdf_abs(rho, dist_at);
    } else if (dist_op == "pdf-signed") {
      value = rpl::pdf_signed(rho, dist_at);
    } else if (dist_op == "cdf") {
      value = rpl::cdf_abs(rho, dist_at);
    } else if (dist_op == "quantile") {
      value = rpl::quantile_abs(rho, dist_at);
    } else if (dist_op == "partial-moment") {
      value = rpl::partial_first_moment(rho, dist_at);
    } else {
      value = rpl::mean_abs(rho);
    }
    std::printf("%s\n", rpl::format_number(value).c_str());
    if (!dist_out.empty()) {
      rpl::CsvWriter csv(dist_out, {"op", "rho", "at", "value"});
      csv.raw_row({dist_op, rpl::format_number(dist_rho),
                   rpl::format_number(dist_at), rpl::format_number(value)});
      csv.close();
    }
  } else if (ensemble->parsed()) {
    if (ens_out.empty() && ens_in.empty()) {
      std::fprintf(stderr, "ensemble: need --out and/or --in\n");
      return 1;
    }
    if (!ens_out.empty())
      rpl::save_ensemble(rpl::sample_ensemble(ens_m, ens_n, ens_seed), ens_out);
    if (!ens_in.empty()) {
      const rpl::SensingEnsemble loaded = rpl::load_ensemble(ens_in);
      const double mean = loaded.vectors.mean();
      const double var =
          (loaded.vectors.array() - mean).square().sum() /
          (loaded.vectors.size() - 1);
      std::printf("m=%d n=%d seed=%llu entry_mean=%s entry_var=%s\n", loaded.m(),
                  loaded.n(), static_cast<unsigned long long>(loaded.seed),
                  rpl::format_number(mean).c_str(), rpl::format_number(var).c_str());
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

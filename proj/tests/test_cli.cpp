// Exit-code and surface conformance of the rpl binary: 0 on success (and
// --help), 1 on flag errors, 2 on runtime failures.  The binary path comes
// from the build via RPL_CLI_PATH.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(RPL_CLI_PATH) + " " + args + " > cli_out.txt 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string last_output() {
  std::ifstream in("cli_out.txt");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("--help exits 0 and documents the subcommands") {
  CHECK(run_cli("--help") == 0);
  const std::string out = last_output();
  for (const char* name :
       {"balance", "threshold-sweep", "phase-diagram", "robc", "certificate",
        "dist", "ensemble"}) {
    CHECK(out.find(name) != std::string::npos);
  }
  CHECK(run_cli("threshold-sweep --help") == 0);
  const std::string sweep_help = last_output();
  for (const char* flag : {"--n", "--m", "--s", "--trials", "--seed", "--out",
                           "--max-iters", "--step-c", "--threads"}) {
    CHECK(sweep_help.find(flag) != std::string::npos);
  }
}

TEST_CASE("flag errors exit 1 with a message") {
  CHECK(run_cli("") == 1);                                  // missing subcommand
  CHECK(run_cli("threshold-sweep") == 1);                   // missing --out
  CHECK(run_cli("robc --bogus-flag 1 --out x.csv") == 1);   // unknown flag
  CHECK(run_cli("frobnicate") == 1);                        // unknown subcommand
  CHECK(!last_output().empty());
  CHECK(run_cli("ensemble") == 1);                          // needs --out/--in
}

TEST_CASE("runtime failures exit 2") {
  CHECK(run_cli("robc --n 6 --m 40 --s 0.1 --trials 4 --seed 1 "
                "--out /nonexistent-dir/x.csv") == 2);
  CHECK(run_cli("dist --rho 2.0 --op pdf --at 1.0") == 2);  // rho out of range
}

TEST_CASE("dist subcommand prints the requested value") {
  CHECK(run_cli("dist --rho 0 --op mean --at 0") == 0);
  CHECK(last_output().find("0.63661977") != std::string::npos);  // 2/pi
  CHECK(run_cli("dist --rho 0.5 --op quantile --at 0.5 --out dist_out.csv") == 0);
  std::ifstream csv("dist_out.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "op,rho,at,value");
  std::remove("dist_out.csv");
}

TEST_CASE("ensemble dump/inspect round trip via the CLI") {
  CHECK(run_cli("ensemble --n 4 --m 25 --seed 11 --out cli_ens.bin") == 0);
  CHECK(run_cli("ensemble --in cli_ens.bin") == 0);
  const std::string out = last_output();
  CHECK(out.find("m=25 n=4 seed=11") != std::string::npos);
  std::remove("cli_ens.bin");
  std::remove("cli_out.txt");
}

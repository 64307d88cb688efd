#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qss/metrics.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int status = -1;
  std::string out;
  std::string err;
};

// Runs the installed binary through the shell, capturing both streams.
CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string tag = "/tmp/qss_cli_test_" + std::to_string(counter++);
  const std::string out_path = tag + ".out";
  const std::string err_path = tag + ".err";
  const std::string cmd = std::string(QSS_CLI_PATH) + " " + args + " > " +
                          out_path + " 2> " + err_path;
  const int rc = std::system(cmd.c_str());
  CliResult r;
  if (rc != -1 && WIFEXITED(rc)) r.status = WEXITSTATUS(rc);
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("run prints a parseable report and exits clean") {
  const CliResult r = run_cli("run --rounds 2000 --seed 5");
  REQUIRE(r.status == 0);
  const qss::Report rep = qss::parse_report(r.out);
  CHECK(rep.config.rounds == 2000);
  CHECK(rep.config.seed == 5);
  CHECK_FALSE(rep.aborted);
  CHECK(rep.key_bits > 0);

  const CliResult again = run_cli("run --rounds 2000 --seed 5");
  CHECK(again.status == 0);
  CHECK(again.out == r.out);  // same seed, same bytes
}

TEST_CASE("run mirrors the report into --out") {
  const std::string path = "/tmp/qss_cli_test_report.json";
  const CliResult r = run_cli("run --rounds 1500 --seed 6 --out " + path);
  REQUIRE(r.status == 0);
  CHECK(slurp(path) == r.out);
  std::remove(path.c_str());
}

TEST_CASE("a detected attack turns into exit code 2") {
  const CliResult r = run_cli(
      "run --rounds 3000 --seed 7 --pd 0.3 --pc 0.3 --attack fake-epr");
  CHECK(r.status == 2);
  const qss::Report rep = qss::parse_report(r.out);
  CHECK(rep.aborted);
}

TEST_CASE("usage errors exit with 1 and explain themselves") {
  CHECK(run_cli("run --bogus-flag 3").status == 1);
  CHECK(run_cli("run --attack made-up").status == 1);
  CHECK(run_cli("").status == 1);  // a subcommand is required
  const CliResult help = run_cli("--help");
  CHECK(help.status == 0);
  CHECK(help.out.find("run") != std::string::npos);
}

TEST_CASE("config file values load and flags override them") {
  const std::string path = "/tmp/qss_cli_test_config.json";
  write_file(path, "{\"p_c\": 0.3, \"rounds\": 1200, \"seed\": 99}\n");
  const CliResult r = run_cli("run --config " + path + " --pc 0.1");
  REQUIRE(r.status == 0);
  const qss::Report rep = qss::parse_report(r.out);
  CHECK(rep.config.rounds == 1200);
  CHECK(rep.config.seed == 99);
  CHECK(rep.config.p_c == 0.1);  // the flag wins

  write_file(path, "{\"p_x\": 1}\n");
  const CliResult bad = run_cli("run --config " + path);
  CHECK(bad.status == 1);
  CHECK(bad.err.find("unknown config key") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("attack flags land in the report configuration") {
  // The tap corrupts the pair stream, so raise the threshold: this test is
  // about configuration echo, not detection.
  const CliResult r = run_cli(
      "run --rounds 800 --seed 8 --threshold 0.9 --attack intercept-resend "
      "--attack-leg alice-to-bob --attack-basis fixed-y --no-tap-return-leg");
  REQUIRE(r.status == 0);
  const qss::Report rep = qss::parse_report(r.out);
  CHECK(rep.config.attack.kind == qss::AttackKind::InterceptResend);
  CHECK(rep.config.attack.leg == qss::ChannelLeg::AliceToBob);
  CHECK_FALSE(rep.config.attack.basis_policy.uniform);
  CHECK(rep.config.attack.basis_policy.fixed == qss::qcore::MeasBasis::Y);
  CHECK_FALSE(rep.config.attack.tap_return_leg);
}

TEST_CASE("sweep emits one verified row per grid cell") {
  const std::string path = "/tmp/qss_cli_test_sweep.csv";
  const CliResult r = run_cli(
      "sweep --pd-grid 0,0.1 --pc-grid 0.1 --rounds 4000 --seed 3 --csv " +
      path);
  CHECK(r.status == 0);
  std::istringstream csv(slurp(path));
  std::string line;
  REQUIRE(std::getline(csv, line));
  CHECK(line ==
        "pd,pc,rounds,seed,eta_q,eta_q_theory,sigma_q,eta_t,eta_t_theory,"
        "sigma_t,pass");
  int rows = 0;
  while (std::getline(csv, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 2);
  std::remove(path.c_str());
}

TEST_CASE("tables lists every catalog the session logic relies on") {
  const CliResult r = run_cli("tables");
  REQUIRE(r.status == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("schema") == "qss-tables-v1");
  CHECK(j.at("canonical_states").size() == 8);
  CHECK(j.at("representations").size() == 24);
  CHECK(j.at("transitions").size() == 64);
  CHECK(j.at("phase_discrepancies").size() == 12);
  CHECK(j.at("documented_mismatch").is_object());
}

TEST_CASE("selftest passes and says so") {
  const CliResult r = run_cli("selftest");
  CHECK(r.status == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

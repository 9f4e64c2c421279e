// End-to-end checks of the command-line tool: exit codes, CSV shape,
// byte-identical reruns, config-file runs. The binary path comes in via
// QCPD_CLI_PATH from the build.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcpd.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

const std::string cli = QCPD_CLI_PATH;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("qcpd_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run(const std::string &args) {
  const int rc = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

} // namespace

TEST_CASE("scan produces a well-formed, reproducible CSV") {
  TempDir tmp;
  const fs::path a = tmp.path / "a.csv", b = tmp.path / "b.csv";
  const std::string common =
      "scan --model xy --gamma 0 --lambda-range 0.5:1.5 --step 0.05 "
      "--kt 0.05 --provider ff --out ";
  REQUIRE(run(common + a.string()) == 0);
  REQUIRE(run(common + b.string()) == 0);
  const std::string text = slurp(a);
  CHECK(text == slurp(b)); // byte-identical rerun
  CHECK(text.rfind("param,kT,z,xx,yy,zz,", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 22); // header + 21 rows

  // CSV values reparse to the library values
  std::istringstream lines(text);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  std::istringstream cells(first);
  std::string cell;
  std::getline(cells, cell, ','); // param
  CHECK(std::stod(cell) == 0.5);
  std::getline(cells, cell, ','); // kT
  std::getline(cells, cell, ','); // z
  qcpd_model m{};
  m.kind = QCPD_MODEL_XY;
  m.lambda = 0.5;
  qcpd_provider ff{QCPD_PROVIDER_FREE_FERMION, 0};
  qcpd_correlators c;
  REQUIRE(qcpd_correlators_eval(&m, 0.05, &ff, &c) == QCPD_OK);
  CHECK(std::abs(std::stod(cell) - c.z) < 1e-12);
}

TEST_CASE("config file runs reproduce flag runs") {
  TempDir tmp;
  const fs::path cfg = tmp.path / "run.cfg";
  const fs::path from_cfg = tmp.path / "cfg.csv", from_flags = tmp.path / "flags.csv";
  {
    std::ofstream out(cfg);
    out << "[scan]\n"
        << "model=xy\n"
        << "gamma=0.5\n"
        << "lambda-range=0.8:1.2\n"
        << "step=0.1\n"
        << "kt=0.1\n"
        << "provider=ff\n";
  }
  REQUIRE(run("--config " + cfg.string() + " scan --out " + from_cfg.string()) == 0);
  REQUIRE(run("scan --model xy --gamma 0.5 --lambda-range 0.8:1.2 --step 0.1 "
              "--kt 0.1 --provider ff --out " +
              from_flags.string()) == 0);
  CHECK(slurp(from_cfg) == slurp(from_flags));
}

TEST_CASE("presets fill in the paper scenarios") {
  TempDir tmp;
  const fs::path out = tmp.path / "gamma.csv";
  REQUIRE(run("scan --preset xy-gamma-scan --step 0.5 --kt 0.1 --out " +
              out.string()) == 0);
  const std::string text = slurp(out);
  CHECK(std::count(text.begin(), text.end(), '\n') == 6); // gamma -1:1 step .5
  CHECK(run("scan --preset no-such-preset --out " + out.string()) == 1);
}

TEST_CASE("usage errors exit 1 and write no file") {
  TempDir tmp;
  const fs::path out = tmp.path / "never.csv";
  CHECK(run("scan --model xy --lambda-range 2:1 --provider ff --out " +
            out.string()) == 1);
  CHECK(run("scan --model xy --provider ff --out " + out.string()) == 1);
  CHECK(run("scan --model banana --lambda-range 1:2 --out " + out.string()) == 1);
  CHECK(run("scan --model xxz --h 1 --delta-range 1:2 --provider ff --out " +
            out.string()) == 1); // unsupported provider combination
  CHECK(run("detect --model xy --gamma 0 --lambda-range 0.9:1.1 --provider ff "
            "--kt 0.1 --kt 0.2 --out " +
            out.string()) == 1); // needs three positive temperatures
  CHECK(run("--no-such-flag") == 1);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("correlators and crossings subcommands") {
  TempDir tmp;
  const fs::path out = tmp.path / "c.csv";
  REQUIRE(run("correlators --model xy --lambda 1.2 --gamma 1 --provider ff "
              "--kt 0.1 --kt 0.5 --out " +
              out.string()) == 0);
  const std::string text = slurp(out);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);

  const fs::path cr = tmp.path / "cross.csv";
  REQUIRE(run("crossings --model xy --gamma 0 --lambda-range 1:2 --step 0.05 "
              "--provider ff --out " +
              cr.string()) == 0);
  const std::string cross = slurp(cr);
  CHECK(cross.rfind("kind,param,kT", 0) == 0);
  CHECK(std::count(cross.begin(), cross.end(), '\n') > 1);
}

TEST_CASE("detect subcommand summarizes an estimate") {
  TempDir tmp;
  const fs::path out = tmp.path / "detect.csv";
  REQUIRE(run("detect --model xy --gamma 0 --lambda-range 0.9:1.1 --step 0.01 "
              "--provider ff --kt 0.02 --kt 0.05 --kt 0.08 --order 1 "
              "--fit linear --out " +
              out.string()) == 0);
  const std::string text = slurp(out);
  CHECK(text.rfind("kind,kT,location,", 0) == 0);
  CHECK(text.find("extrapolation") != std::string::npos);
}

TEST_CASE("verify subcommand") {
  CHECK(run("verify --level quick") == 0);
  CHECK(run("verify --level nonsense") == 1);
}

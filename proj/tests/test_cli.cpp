#include <cstdio>
#include <cstdlib>
#include <doctest.h>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "test_helpers.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "adiagrover_cli_test";
  fs::create_directories(dir);
  return dir;
}

CliResult run_cli(const std::string& args) {
  const std::string bin = testutil::env_or("ADIAGROVER_BIN", "");
  REQUIRE_MESSAGE(!bin.empty(), "ADIAGROVER_BIN must point at the binary");
  const fs::path dir = scratch_dir();
  const fs::path out = dir / "stdout.txt";
  const fs::path err = dir / "stderr.txt";
  const std::string cmd =
      bin + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::vector<std::vector<double>> parse_csv(const std::string& text,
                                           std::string* header) {
  std::istringstream is(text);
  std::string line;
  REQUIRE(std::getline(is, line));
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help exits zero and mentions every subcommand") {
  const CliResult r = run_cli("--help");
  CHECK(r.code == 0);
  for (const char* word : {"schedule", "simulate", "bounds", "figure"}) {
    CHECK(r.out.find(word) != std::string::npos);
  }
}

TEST_CASE("full help matches the golden transcript") {
  const std::string data = testutil::env_or("ADIAGROVER_DATA", "");
  REQUIRE(!data.empty());
  const CliResult r = run_cli("--help-all");
  CHECK(r.code == 0);
  const std::string golden = slurp(fs::path(data) / "help_golden.txt");
  REQUIRE(!golden.empty());
  CHECK(r.out == golden);
}

TEST_CASE("unknown flags are usage errors") {
  CHECK(run_cli("--bogus").code == 2);
  CHECK(run_cli("schedule --kind nosuch --n 4").code == 2);
  CHECK(run_cli("bounds").code == 2);  // missing subcommand
}

TEST_CASE("schedule table endpoints and row count") {
  const CliResult r = run_cli("schedule --kind linear --n 4");
  REQUIRE(r.code == 0);
  std::string header;
  const auto rows = parse_csv(r.out, &header);
  CHECK(header == "s,q,dq_ds");
  REQUIRE(rows.size() == 1025);
  CHECK(rows.front()[0] == 0.0);
  CHECK(rows.front()[1] == 0.0);
  CHECK(rows.back()[0] == 1.0);
  CHECK(rows.back()[1] == 1.0);
}

TEST_CASE("optimal schedule via the cli hits its boundary conditions") {
  const CliResult r =
      run_cli("schedule --kind optimal --n 10 --gamma gmin --samples 101");
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out, nullptr);
  REQUIRE(rows.size() == 101);
  CHECK(std::abs(rows.front()[1] - 0.0) < 1e-12);
  CHECK(std::abs(rows.back()[1] - 1.0) < 1e-12);
  CHECK(std::abs(rows[50][1] - 0.5) < 1e-9);
}

TEST_CASE("unitary simulation keeps purity at one") {
  const CliResult r = run_cli(
      "simulate --n 1 --gamma 0 --schedule linear --T 10 --samples 9");
  REQUIRE(r.code == 0);
  std::string header;
  const auto rows = parse_csv(r.out, &header);
  CHECK(header ==
        "s,q,fidelity,rho_00_re,rho_01_re,rho_01_im,rho_11_re,bloch_x,"
        "bloch_y,bloch_z,purity");
  REQUIRE(rows.size() == 9);
  for (const auto& row : rows) {
    REQUIRE(row.size() == 11);
    CHECK(std::abs(row.back() - 1.0) < 1e-9);
  }
}

TEST_CASE("time sugar accepts multiples of the local-adiabatic runtime") {
  const CliResult r = run_cli(
      "simulate --n 2 --gamma gmin --schedule optimal --T 0.5rc --samples 3 "
      "--format json");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  const double expected = 0.5 * 4.0 * std::atan(std::sqrt(3.0)) /
                          (0.25 * std::sqrt(3.0));
  CHECK(doc.at("T").get<double>() == doctest::Approx(expected));
}

TEST_CASE("bounds imin reproduces the frozen reference") {
  const CliResult r = run_cli("bounds imin --n 1 --gamma 1 --T 100");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("min_infidelity").get<double>() ==
        doctest::Approx(0.00757630543569969764).epsilon(1e-12));
}

TEST_CASE("bounds tmin end to end with gamma sugar") {
  const CliResult r = run_cli("bounds tmin --n 10 --gamma gmin --target 0.1");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("gamma").get<double>() == 0.03125);
  CHECK(std::abs(doc.at("tmin").get<double>() - 394.293454701367739) < 1e-9);
  CHECK(doc.at("regime").get<std::string>() == "moderate");
}

TEST_CASE("bounds gamma-max pins x near one at eps close to 1/e") {
  const CliResult r = run_cli("bounds gamma-max --gap 1 --eps 0.3678794");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(std::abs(doc.at("x_exact").get<double>() - 1.0) < 1e-5);
}

TEST_CASE("bounds gamma-max past the positivity ceiling is a numerical error") {
  const CliResult r = run_cli("bounds gamma-max --gap 1 --eps 0.9");
  CHECK(r.code == 1);
  CHECK(!r.err.empty());
}

TEST_CASE("bounds qsl reports the locked ratio") {
  const CliResult r = run_cli("bounds qsl --n 2 --eps-adiab 0.25");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(std::abs(doc.at("ratio").get<double>() - 2.0) < 1e-9);
}

TEST_CASE("config file fills defaults but flags win") {
  const fs::path dir = scratch_dir();
  const fs::path cfg = dir / "run.json";
  {
    std::ofstream os(cfg);
    os << R"({"n_qubits": 1,
              "schedule": {"kind": "linear"},
              "dephasing": {"gamma": 0},
              "sim": {"T": 5, "n_samples": 5}})";
  }
  const CliResult r =
      run_cli("simulate --config " + cfg.string() + " --samples 7");
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out, nullptr);
  CHECK(rows.size() == 7);  // flag overrides the config's 5
}

TEST_CASE("unknown config keys are rejected") {
  const fs::path dir = scratch_dir();
  const fs::path cfg = dir / "bad.json";
  {
    std::ofstream os(cfg);
    os << R"({"n_qubits": 2, "tpyo": 1})";
  }
  const CliResult r = run_cli("simulate --config " + cfg.string());
  CHECK(r.code == 2);
  CHECK(r.err.find("tpyo") != std::string::npos);

  const fs::path nested = dir / "bad_nested.json";
  {
    std::ofstream os(nested);
    os << R"({"sim": {"T": 5, "steps": 10}})";
  }
  CHECK(run_cli("simulate --config " + nested.string()).code == 2);
}

TEST_CASE("figure command writes files and rejects unknown names") {
  const fs::path root = scratch_dir() / "figroot";
  fs::remove_all(root);
  const CliResult r = run_cli("figure fig1a --out " + root.string());
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  int n_paths = 0;
  for (std::string line; std::getline(lines, line);) {
    if (line.empty()) continue;
    CHECK(fs::exists(line));
    ++n_paths;
  }
  CHECK(n_paths >= 2);  // data plus meta.json
  CHECK(run_cli("figure fig9 --out " + root.string()).code == 2);
  fs::remove_all(root);
}

TEST_CASE("version flag prints the library version") {
  const CliResult r = run_cli("--version");
  CHECK(r.code == 0);
  CHECK(r.out.find("0.1.0") != std::string::npos);
}

}  // TEST_SUITE

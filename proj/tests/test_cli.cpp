#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "powrel/config.hpp"

using nlohmann::json;

namespace {

const std::string kCli = POWREL_CLI_PATH;
const std::string kConfigs = POWREL_CONFIG_DIR;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

int run_counter = 0;

RunResult run_cli(const std::string& args) {
  const std::string out_path =
      "cli_test_out_" + std::to_string(run_counter++) + ".txt";
  const std::string cmd = kCli + " " + args + " > " + out_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  result.output = buffer.str();
  std::remove(out_path.c_str());
  return result;
}

std::string config(const std::string& name) {
  return kConfigs + "/" + name;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("eval emits a single JSON record") {
  const auto r = run_cli("eval --config " + config("example3.json") +
                         " --quantity joint_survival -t 0 -s 0");
  REQUIRE(r.exit_code == 0);
  const json record = json::parse(r.output);
  CHECK(record.at("quantity") == "joint_survival");
  CHECK(record.at("t") == 0.0);
  CHECK(record.at("s") == 0.0);
  CHECK(record.at("value").get<double>() == 1.0);
}

TEST_CASE("eval reproduces the closed-form joint pdf") {
  const auto r = run_cli("eval --config " + config("example1.json") +
                         " --quantity joint_pdf -t 1 -s 1");
  REQUIRE(r.exit_code == 0);
  const json record = json::parse(r.output);
  CHECK(record.at("value").get<double>() ==
        doctest::Approx(0.006861091000527754).epsilon(1e-10));
}

TEST_CASE("input errors exit with code 2") {
  CHECK(run_cli("eval --config missing_file.json --quantity physical -t 1")
            .exit_code == 2);
  CHECK(run_cli("eval --config " + config("example1.json") +
                " --quantity nonsense -t 1")
            .exit_code == 2);
  CHECK(run_cli("grid --config " + config("example1.json") +
                " --quantity joint_survival --t-range 0:1:1 --s-list 1")
            .exit_code == 2);
  CHECK(run_cli("nonsense-subcommand").exit_code == 2);
}

TEST_CASE("domain and conditioning errors exit with code 3") {
  CHECK(run_cli("eval --config " + config("example3.json") +
                " --quantity residual_cdf -t 1 -s 0.5 -x 0.5")
            .exit_code == 3);
  CHECK(run_cli("eval --config " + config("example2.json") +
                " --quantity operational_reliability -t 0.5 -s 9")
            .exit_code == 3);
}

TEST_CASE("grid emits lexicographically ordered deterministic CSV") {
  const std::string args = "grid --config " + config("figure4.json") +
                           " --quantity operational_reliability"
                           " --t-range 0:2:21 --s-list 0,2,4,6,8,10";
  const auto first = run_cli(args);
  REQUIRE(first.exit_code == 0);
  const auto second = run_cli(args);
  CHECK(first.output == second.output);
  const auto threaded = run_cli(args + " --threads 3");
  CHECK(first.output == threaded.output);

  const auto rows = lines_of(first.output);
  REQUIRE(rows.size() == 1 + 6 * 21);
  CHECK(rows[0] == "t,s,value");

  // each s-block is nonincreasing in t and starts at exactly 1
  std::size_t row = 1;
  double prev_s = -1.0;
  for (int block = 0; block < 6; ++block) {
    double prev_value = 2.0;
    double s_block = -1.0;
    for (int i = 0; i < 21; ++i, ++row) {
      double t;
      double s;
      double value;
      REQUIRE(std::sscanf(rows[row].c_str(), "%lf,%lf,%lf", &t, &s, &value) ==
              3);
      if (i == 0) {
        s_block = s;
        CHECK(value == 1.0);
      }
      CHECK(s == s_block);
      CHECK(value <= prev_value + 1e-12);
      prev_value = value;
    }
    CHECK(s_block > prev_s);
    prev_s = s_block;
  }
}

TEST_CASE("joint pdf grid equals the closed form pointwise") {
  const auto r = run_cli("grid --config " + config("example1.json") +
                         " --quantity joint_pdf --t-range 0.2:2:7"
                         " --s-range 0:2.4:7");
  REQUIRE(r.exit_code == 0);
  const auto rows = lines_of(r.output);
  REQUIRE(rows.size() == 1 + 7 * 7);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double t;
    double s;
    double value;
    REQUIRE(std::sscanf(rows[i].c_str(), "%lf,%lf,%lf", &t, &s, &value) == 3);
    const double expected = 2.0 * 6 * 4 * 10 * std::pow(1.0 - std::exp(-t), 2) *
                            std::exp(-4.0 * t) / std::pow(s + 1.0, 9);
    CHECK(value == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("one-dimensional grid headers") {
  const auto phys = run_cli("grid --config " + config("example1.json") +
                            " --quantity physical --t-range 0:2:5");
  REQUIRE(phys.exit_code == 0);
  CHECK(lines_of(phys.output).at(0) == "t,value");
  CHECK(lines_of(phys.output).size() == 6);

  const auto dmin = run_cli("grid --config " + config("example1.json") +
                            " --quantity min_concomitant_survival"
                            " --s-range 0:2:5");
  REQUIRE(dmin.exit_code == 0);
  const auto rows = lines_of(dmin.output);
  CHECK(rows.at(0) == "s,value");
  double s0;
  double d0;
  REQUIRE(std::sscanf(rows.at(1).c_str(), "%lf,%lf", &s0, &d0) == 2);
  CHECK(d0 == 1.0);  // D(0) = 1

  const auto mrl = run_cli("grid --config " + config("example3.json") +
                           " --quantity mrl --t-range 0.2:0.6:2 --s-list 0.5");
  REQUIRE(mrl.exit_code == 0);
  CHECK(lines_of(mrl.output).at(0) == "t,s,value");
  CHECK(lines_of(mrl.output).size() == 3);
}

TEST_CASE("grid honors the minimal two-step request") {
  const auto r = run_cli("grid --config " + config("example1.json") +
                         " --quantity joint_survival --t-range 0:1:2"
                         " --s-list 0.5,1.5");
  REQUIRE(r.exit_code == 0);
  const auto rows = lines_of(r.output);
  CHECK(rows.size() == 1 + 2 * 2);
}

TEST_CASE("residual grids sweep the running point") {
  const auto r = run_cli("grid --config " + config("example3.json") +
                         " --quantity residual_cdf -t 0.5 -s 0.5"
                         " --x-range 0.6:3:25");
  REQUIRE(r.exit_code == 0);
  const auto rows = lines_of(r.output);
  REQUIRE(rows.size() == 26);
  CHECK(rows[0] == "x,value");
  double prev = -1.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double x;
    double value;
    REQUIRE(std::sscanf(rows[i].c_str(), "%lf,%lf", &x, &value) == 2);
    CHECK(value >= prev - 1e-12);
    prev = value;
  }
}

TEST_CASE("simulate reports estimate fields and matches eval") {
  const auto trivial = run_cli("simulate --config " + config("example3.json") +
                               " --quantity joint_survival -t 0 -s 0"
                               " --samples 1000 --seed 9");
  REQUIRE(trivial.exit_code == 0);
  const json t_record = json::parse(trivial.output);
  CHECK(t_record.at("value").get<double>() == 1.0);
  CHECK(t_record.at("std_error").get<double>() == 0.0);
  CHECK(t_record.at("n_samples").get<int>() == 1000);

  const auto one = run_cli("simulate --config " + config("example3.json") +
                           " --quantity joint_survival -t 0 -s 0"
                           " --samples 1 --seed 9");
  REQUIRE(one.exit_code == 0);
  CHECK(json::parse(one.output).at("value").get<double>() == 1.0);

  const auto sim = run_cli("simulate --config " + config("example3.json") +
                           " --quantity joint_survival -t 0.5 -s 0.5"
                           " --samples 200000 --seed 9");
  const auto ana = run_cli("eval --config " + config("example3.json") +
                           " --quantity joint_survival -t 0.5 -s 0.5");
  REQUIRE(sim.exit_code == 0);
  REQUIRE(ana.exit_code == 0);
  const json sim_record = json::parse(sim.output);
  const double diff = sim_record.at("value").get<double>() -
                      json::parse(ana.output).at("value").get<double>();
  CHECK(std::fabs(diff) <= 3.0 * sim_record.at("std_error").get<double>());
}

TEST_CASE("verify passes, is byte-deterministic, and ignores worker count") {
  const std::string base = "verify --config " + config("example1.json") +
                           " --samples 150000 --seed 31";
  const auto first = run_cli(base);
  REQUIRE(first.exit_code == 0);
  const auto second = run_cli(base);
  CHECK(first.output == second.output);
  const auto threaded = run_cli(base + " --threads 5");
  CHECK(first.output == threaded.output);

  const json report = json::parse(first.output);
  CHECK(report.at("pass").get<bool>());
  CHECK(report.at("checks").size() == 25);
  CHECK(report.at("normalization").at("pass").get<bool>());
}

TEST_CASE("verify fails loudly when the quadrature tolerance is corrupted") {
  const auto r = run_cli("verify --config " + config("example1.json") +
                         " --samples 50000 --seed 31 --rel-tol 10");
  CHECK(r.exit_code == 4);
  const json report = json::parse(r.output);
  CHECK_FALSE(report.at("pass").get<bool>());
}

TEST_CASE("every shipped config parses back to an equal model") {
  for (const std::string name :
       {"example1.json", "example2.json", "example3.json", "figure4.json"}) {
    const powrel::SystemModel m = powrel::load_model_file(config(name));
    const powrel::SystemModel back =
        powrel::model_from_json(json::parse(powrel::to_json(m).dump()));
    CHECK(powrel::to_json(m) == powrel::to_json(back));
  }
}

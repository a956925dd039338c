// Copyright 2026 The gaussmax Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gaussmax_cli/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"

using namespace gaussmax::cli;
using nlohmann::json;

namespace {

constexpr const char* kSigma = R"({"dim": 2, "re": [[2, 0.5], [0.5, 1]]})";
constexpr const char* kNoise = R"({"dim": 2, "re": [[0.3, 0], [0, 0.5]], "im": [[0, 0.1], [-0.1, 0]]})";

RunResult run_command(const std::string& command, const std::string& input, Units units = Units::kNats) {
  RunConfig config;
  config.command = command;
  config.input = input;
  config.units = units;
  return run(config);
}

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "gaussmax");
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(cli, capacity_document_layout) {
  const RunResult r = run_command("capacity", std::string(R"({"sigma": )") + kSigma + R"(, "noise": )" + kNoise + "}");
  ASSERT_EQ(r.exit_code, kExitOk) << r.error;
  const json& d = r.document;
  EXPECT_EQ(d.at("toolkit"), "gaussmax");
  EXPECT_EQ(d.at("command"), "capacity");
  EXPECT_TRUE(d.at("version").is_string());
  EXPECT_TRUE(d.at("input").is_object());
  EXPECT_NEAR(d.at("output").at("capacity_nats").get<double>(), 1.4155027867029465411, 1e-13);
  EXPECT_EQ(d.at("output").at("optimal_ensemble"), "coherent");
  EXPECT_TRUE(d.contains("diagnostics"));
}

TEST(cli, bits_unit_suffix) {
  const RunResult r = run_command("capacity", R"({"sigma": {"dim": 1, "re": [[1]]}})", Units::kBits);
  ASSERT_EQ(r.exit_code, kExitOk) << r.error;
  EXPECT_NEAR(r.document.at("output").at("capacity_bits").get<double>(), 1.0, 1e-15);
  EXPECT_FALSE(r.document.at("output").contains("capacity_nats"));
}

TEST(cli, waterfill_diagonal_and_general) {
  const RunResult d = run_command("waterfill", R"({"frequencies": [1, 2, 3], "noise": [0.5, 0, 1], "budget": 3})");
  ASSERT_EQ(d.exit_code, kExitOk) << d.error;
  EXPECT_NEAR(d.document.at("output").at("water_level").get<double>(), 3.25, 1e-14);
  EXPECT_NEAR(d.document.at("output").at("capacity_nats").get<double>(), 1.258697704015182543, 1e-14);
  const RunResult g = run_command(
      "waterfill",
      R"({"hamiltonian": {"dim": 2, "re": [[1, 0.3], [0.3, 2]]}, "noise": {"dim": 2, "re": [[0.5, 0.2], [0.2, 0.1]]}, "budget": 2})");
  ASSERT_EQ(g.exit_code, kExitOk) << g.error;
  EXPECT_NEAR(g.document.at("output").at("capacity_nats").get<double>(), 1.0129687413118921569, 1e-9);
  EXPECT_FALSE(g.document.at("output").at("closed_form").get<bool>());
}

TEST(cli, dual_reports_identity_residual) {
  const RunResult r = run_command("dual", std::string(R"({"sigma": )") + kSigma + R"(, "noise": )" + kNoise + "}");
  ASSERT_EQ(r.exit_code, kExitOk) << r.error;
  EXPECT_LT(r.document.at("diagnostics").at("identity_residual").get<double>(), 1e-12);
  EXPECT_NEAR(r.document.at("output").at("accessible_information_nats").get<double>(), 1.4155027867029465411, 1e-13);
}

TEST(cli, dual_finite_round_trip) {
  const std::string input = R"({
    "ensemble": {"probs": [0.5, 0.5],
                 "states": [{"dim": 2, "re": [[1, 0], [0, 0]]}, {"dim": 2, "re": [[0.5, 0.5], [0.5, 0.5]]}]},
    "povm": {"elements": [{"dim": 2, "re": [[1, 0], [0, 0]]}, {"dim": 2, "re": [[0, 0], [0, 1]]}]}})";
  const RunResult r = run_command("dual-finite", input);
  ASSERT_EQ(r.exit_code, kExitOk) << r.error;
  const json& out = r.document.at("output");
  const json& diag = r.document.at("diagnostics");
  EXPECT_NEAR(out.at("mutual_information_nats").get<double>(), diag.at("dual_mutual_information_nats").get<double>(),
              1e-12);
  EXPECT_LT(diag.at("joint_max_gap").get<double>(), 1e-12);
}

TEST(cli, sampling_commands_are_seeded) {
  const std::string input =
      std::string(R"({"sigma": )") + kSigma + R"(, "noise_state": {"dim": 2, "re": [[0.2, 0], [0, 0.4]]}})";
  RunConfig config;
  config.command = "info-mc";
  config.input = input;
  config.seed = 5;
  config.n = 20000;
  const RunResult a = run(config);
  const RunResult b = run(config);
  ASSERT_EQ(a.exit_code, kExitOk) << a.error;
  EXPECT_EQ(a.document.at("output"), b.document.at("output"));
  EXPECT_LT(std::abs(a.document.at("diagnostics").at("z_score").get<double>()), 5.0);
  EXPECT_EQ(a.document.at("output").at("seed"), 5);

  const auto csv = std::filesystem::temp_directory_path() / "gaussmax_cli_test_pairs.csv";
  config.command = "sample";
  config.n = 10;
  config.csv_path = csv.string();
  const RunResult s = run(config);
  ASSERT_EQ(s.exit_code, kExitOk) << s.error;
  std::ifstream file(csv);
  std::string line;
  int lines = 0;
  while (std::getline(file, line)) ++lines;
  EXPECT_EQ(lines, 11);
  std::filesystem::remove(csv);
}

TEST(cli, error_exit_codes) {
  EXPECT_EQ(run_command("capacity", R"({"noise": {"dim": 1, "re": [[0]]}})").exit_code, kExitInvalid);
  const RunResult missing = run_command("capacity", R"({"noise": {"dim": 1, "re": [[0]]}})");
  EXPECT_NE(missing.error.find("missing field 'sigma'"), std::string::npos);
  const RunResult malformed = run_command("capacity", "{\"sigma\": \n [1, }");
  EXPECT_EQ(malformed.exit_code, kExitInvalid);
  EXPECT_NE(malformed.error.find("line 2"), std::string::npos);
  EXPECT_EQ(run_command("frobnicate", "{}").exit_code, kExitInvalid);
  EXPECT_EQ(run_command("capacity", "/nonexistent/input.json").exit_code, kExitInvalid);
  EXPECT_EQ(run_command("dual", R"({"sigma": {"dim": 1, "re": [[1e-9]]}, "noise": {"dim": 1, "re": [[1]]}})").exit_code,
            kExitInvalid);
}

TEST(cli, verify_pass_and_forced_failure) {
  RunConfig config;
  config.command = "verify";
  config.suite = "chu";
  config.n = 20;
  const RunResult ok = run(config);
  EXPECT_EQ(ok.exit_code, kExitOk) << ok.error;
  EXPECT_TRUE(ok.document.at("output").at("pass").get<bool>());
  const std::string check = ok.document.at("output").at("suites")[0].at("checks")[0].at("check_name");
  config.tolerances[check] = -1.0;
  const RunResult bad = run(config);
  EXPECT_EQ(bad.exit_code, kExitVerifyFailed);
  EXPECT_FALSE(bad.document.is_null());
  config.suite = "missing-suite";
  EXPECT_EQ(run(config).exit_code, kExitInvalid);
}

TEST(cli, argv_parsing) {
  const Invocation ok = invoke({"capacity", "--input", R"({"sigma": {"dim": 1, "re": [[3]]}})", "--units", "bits"});
  EXPECT_EQ(ok.code, kExitOk) << ok.err;
  EXPECT_NEAR(json::parse(ok.out).at("output").at("capacity_bits").get<double>(), 2.0, 1e-15);
  EXPECT_EQ(invoke({"capacity", "--units", "furlongs"}).code, kExitInvalid);
  EXPECT_EQ(invoke({"verify", "--tol", "noequals"}).code, kExitInvalid);
  const Invocation unknown = invoke({"frobnicate", "--input", "{}"});
  EXPECT_EQ(unknown.code, kExitInvalid);
  EXPECT_NE(unknown.err.find("waterfill"), std::string::npos);
}

TEST(cli, output_file) {
  const auto path = std::filesystem::temp_directory_path() / "gaussmax_cli_test_out.json";
  const Invocation r = invoke({"capacity", "-i", R"({"sigma": {"dim": 1, "re": [[1]]}})", "-o", path.string()});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream file(path);
  EXPECT_EQ(json::parse(file).at("command"), "capacity");
  std::filesystem::remove(path);
}

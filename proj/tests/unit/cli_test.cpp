// Copyright 2026 The armform Authors
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

#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "armform/csv.hpp"
#include "armform/svg_plot.hpp"
#include "test_support.hpp"

namespace armform::tools {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "armform");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("armform_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write_scenario(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

TEST_F(CliTest, RunBundledScenario) {
  const fs::path out = dir_ / "out";
  const CliResult r = run_cli({"run", "--scenario", testing::bundled_scenario_path(), "--out",
                               out.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* f : {"log.csv", "metrics.txt", "trajectories.svg", "edge_errors.svg",
                        "effector_states.svg", "joint_states.svg"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  const std::string metrics = testing::read_file((out / "metrics.txt").string());
  const auto at = metrics.find("max_edge_error_tail=");
  ASSERT_NE(at, std::string::npos);
  EXPECT_LE(std::stod(metrics.substr(at + 20)), 1e-2);

  // Plots depend on log.csv only.
  const CsvTable table = parse_csv(testing::read_file((out / "log.csv").string()));
  EXPECT_EQ(testing::read_file((out / "edge_errors.svg").string()), edge_errors_svg(table));
  EXPECT_EQ(testing::read_file((out / "joint_states.svg").string()), joint_states_svg(table));
}

TEST_F(CliTest, RunIsDeterministicAcrossRunsAndThreads) {
  const std::string sc = testing::bundled_scenario_path();
  const fs::path a = dir_ / "a";
  const fs::path b = dir_ / "b";
  ASSERT_EQ(run_cli({"run", "--scenario", sc, "--out", a.string(), "--duration", "6", "--plots",
                     "off"})
                .code,
            kExitOk);
  ASSERT_EQ(run_cli({"run", "--scenario", sc, "--out", b.string(), "--duration", "6", "--plots",
                     "off", "--threads", "4"})
                .code,
            kExitOk);
  EXPECT_EQ(testing::read_file((a / "log.csv").string()),
            testing::read_file((b / "log.csv").string()));
  EXPECT_FALSE(fs::exists(a / "trajectories.svg"));
}

TEST_F(CliTest, RunOverridesStrategy) {
  const fs::path out = dir_ / "out";
  ASSERT_EQ(run_cli({"run", "--scenario", testing::bundled_scenario_path(), "--out", out.string(),
                     "--duration", "1", "--tail", "0.5", "--strategy", "displacement",
                     "--plots", "off"})
                .code,
            kExitOk);
  const CsvTable table = parse_csv(testing::read_file((out / "log.csv").string()));
  EXPECT_TRUE(table.has_column("e5_y"));
  EXPECT_EQ(table.rows.size(), 101u);
}

TEST_F(CliTest, RunRejectsNegativeStep) {
  const CliResult r = run_cli({"run", "--scenario", testing::bundled_scenario_path(), "--out",
                               (dir_ / "out").string(), "--dt", "-1"});
  EXPECT_EQ(r.code, kExitScenarioError);
  EXPECT_NE(r.err.find("dt > 0"), std::string::npos) << r.err;
}

TEST_F(CliTest, RunRejectsBadFlagsAndFiles) {
  EXPECT_EQ(run_cli({"run"}).code, kExitScenarioError);
  EXPECT_EQ(run_cli({"run", "--scenario", "x", "--plots", "maybe"}).code, kExitScenarioError);
  EXPECT_EQ(run_cli({"run", "--scenario", (dir_ / "missing.scenario").string()}).code,
            kExitScenarioError);
  EXPECT_EQ(run_cli({"run", "--scenario", testing::bundled_scenario_path(), "--out",
                     (dir_ / "o").string(), "--tail", "40"})
                .code,
            kExitScenarioError);
  EXPECT_EQ(run_cli({}).code, kExitScenarioError);
}

TEST_F(CliTest, RunReportsSingularStart) {
  const std::string path = write_scenario(
      "singular.scenario",
      testing::replace_once(testing::bundled_scenario_text(), "agent = 0, 0, 0, pi/3",
                            "agent = 0, 0, 0, 0"));
  const CliResult r = run_cli({"run", "--scenario", path, "--out", (dir_ / "out").string()});
  EXPECT_EQ(r.code, kExitSimulationAbort);
  EXPECT_NE(r.err.find("simulation aborted"), std::string::npos) << r.err;
}

TEST_F(CliTest, VerifyBundledScenario) {
  const CliResult r = run_cli({"verify"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("all 32 checks passed"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST_F(CliTest, VerifyMissingFrequency) {
  // The force compensator models 1 rad/s instead of pi/2.
  const std::string path = write_scenario(
      "missing.scenario",
      testing::replace_once(testing::bundled_scenario_text(),
                            "A_E = 0, pi/2, 0, 0; -pi/2, 0, 0, 0; 0, 0, 0, pi/2; 0, 0, -pi/2, 0",
                            "A_E = 0, 1, 0, 0; -1, 0, 0, 0; 0, 0, 0, 1; 0, 0, -1, 0"));
  const CliResult r = run_cli({"verify", "--scenario", path});
  EXPECT_EQ(r.code, kExitCheckFailed);
  EXPECT_NE(r.err.find("frequency not modeled"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("regulator force"), std::string::npos) << r.err;
}

TEST_F(CliTest, VerifyNonSkewMatrix) {
  const std::string path = write_scenario(
      "skew.scenario", testing::replace_once(testing::bundled_scenario_text(),
                                             "A_M = 0, 1, 0, 0; -1, 0,", "A_M = 0, 1, 0, 0; -0.5, 0,"));
  const CliResult r = run_cli({"verify", "--scenario", path});
  EXPECT_EQ(r.code, kExitCheckFailed);
  EXPECT_NE(r.err.find("A_M is not skew-symmetric"), std::string::npos) << r.err;
}

TEST_F(CliTest, VerifyUnreadableScenario) {
  EXPECT_EQ(run_cli({"verify", "--scenario", (dir_ / "nope").string()}).code, kExitScenarioError);
}

}  // namespace
}  // namespace armform::tools

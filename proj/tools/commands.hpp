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

// `armform run` and `armform verify`.

#ifndef ARMFORM_TOOLS_COMMANDS_HPP_
#define ARMFORM_TOOLS_COMMANDS_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "armform/formation.hpp"

namespace armform::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitScenarioError = 1;
inline constexpr int kExitSimulationAbort = 2;
inline constexpr int kExitCheckFailed = 3;

struct RunOptions {
  std::filesystem::path scenario;
  std::filesystem::path out_dir = "out";
  std::optional<double> duration;
  std::optional<double> dt;
  std::optional<Strategy> strategy;
  bool plots = true;
  double tail = 5.0;
  int threads = 1;
};

// Writes log.csv, metrics.txt and (with plots) trajectories.svg,
// edge_errors.svg, effector_states.svg, joint_states.svg into out_dir.
int run_command(const RunOptions& options, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  std::filesystem::path scenario = ARMFORM_DEFAULT_SCENARIO;
};

int verify_command(const VerifyOptions& options, std::ostream& out, std::ostream& err);

// Full command line, argv[0] included.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace armform::tools

#endif  // ARMFORM_TOOLS_COMMANDS_HPP_

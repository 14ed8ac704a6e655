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

// Scenario files: a line-oriented text format with [section] headers and
// `key = value` entries. See docs/scenario_format.md for the grammar.

#ifndef ARMFORM_SCENARIO_HPP_
#define ARMFORM_SCENARIO_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "armform/engine.hpp"

namespace armform {

struct ScenarioOverrides {
  std::optional<Strategy> strategy;
  std::optional<double> duration;
  std::optional<double> dt;
};

// Throws ScenarioError citing the line or key ("missing key: ...",
// "unknown key ...", "invariant violated: ...").
Scenario parse_scenario_text(std::string_view text, const ScenarioOverrides& overrides = {});
Scenario parse_scenario(const std::filesystem::path& path,
                        const ScenarioOverrides& overrides = {});

// Canonical text form; parse_scenario_text(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

}  // namespace armform

#endif  // ARMFORM_SCENARIO_HPP_

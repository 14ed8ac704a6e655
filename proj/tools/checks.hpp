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

// Consistency checks run by `armform verify`.

#ifndef ARMFORM_TOOLS_CHECKS_HPP_
#define ARMFORM_TOOLS_CHECKS_HPP_

#include <string>
#include <vector>

#include "armform/engine.hpp"

namespace armform::tools {

struct CheckResult {
  std::string name;
  int agent = 0;  // 1-based
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

inline constexpr int kRandomSamples = 100;

std::vector<CheckResult> run_checks(const Scenario& scenario, unsigned seed = 7);

}  // namespace armform::tools

#endif  // ARMFORM_TOOLS_CHECKS_HPP_

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

#include "armform/controller.hpp"

#include <cmath>

#include "armform/errors.hpp"

namespace armform {

void ControllerGains::validate() const {
  if (!(kp > 0.0) || !std::isfinite(kp)) throw InvariantViolation("kp > 0");
  if (!(kd > 0.0) || !std::isfinite(kd)) throw InvariantViolation("kd > 0");
}

Vec2 formation_torque(const ControllerGains& gains, const Mat2& J, const Vec2& e_hat) {
  return -gains.kp * (J.transpose() * e_hat);
}

Vec2 damping_torque(const ControllerGains& gains, const Vec2& g_q, const Vec2& xi) {
  return -gains.kd * xi + g_q;
}

Vec2 total_control(const ControllerGains& gains, const Mat2& J, const Vec2& e_hat,
                   const Vec2& g_q, const Vec2& xi, const Vec2& u_d) {
  return formation_torque(gains, J, e_hat) + damping_torque(gains, g_q, xi) + u_d;
}

}  // namespace armform

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

// Per-arm control law
//
//   u = -Kp J^T e_hat - Kd xi + g(q) + u_d
//
// made of the virtual-spring torque, joint damping with gravity
// compensation, and the internal-model output. Every input is local to the
// arm or measured relative to its graph neighbours.

#ifndef ARMFORM_CONTROLLER_HPP_
#define ARMFORM_CONTROLLER_HPP_

#include "armform/manipulator.hpp"

namespace armform {

struct ControllerGains {
  double kp = 0.0;
  double kd = 0.0;

  void validate() const;
  bool operator==(const ControllerGains&) const = default;
};

Vec2 formation_torque(const ControllerGains& gains, const Mat2& J, const Vec2& e_hat);
Vec2 damping_torque(const ControllerGains& gains, const Vec2& g_q, const Vec2& xi);
Vec2 total_control(const ControllerGains& gains, const Mat2& J, const Vec2& e_hat,
                   const Vec2& g_q, const Vec2& xi, const Vec2& u_d);

}  // namespace armform

#endif  // ARMFORM_CONTROLLER_HPP_

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

#ifndef ARMFORM_ERRORS_HPP_
#define ARMFORM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace armform {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A value violates a documented invariant. what() starts with
// "invariant violated: ".
class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& which)
      : Error("invariant violated: " + which) {}
};

// The internal model lacks a mode of the exosystem it must reproduce.
class FrequencyNotModeled : public Error {
 public:
  explicit FrequencyNotModeled(const std::string& detail)
      : Error("frequency not modeled: " + detail) {}
};

class SingularInertia : public Error {
 public:
  using Error::Error;
};

// Simulation aborts carry the simulated time at which they happened.
class SimulationAbort : public Error {
 public:
  SimulationAbort(const std::string& what, double time)
      : Error(what + " at t = " + std::to_string(time)), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

class SingularConfiguration : public SimulationAbort {
 public:
  explicit SingularConfiguration(double time)
      : SimulationAbort("singular configuration", time) {}
};

class NonFiniteState : public SimulationAbort {
 public:
  explicit NonFiniteState(double time)
      : SimulationAbort("non-finite state", time) {}
};

// Scenario file problems: missing key, unknown key, bad value.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

}  // namespace armform

#endif  // ARMFORM_ERRORS_HPP_

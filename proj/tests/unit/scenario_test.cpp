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

#include "armform/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "armform/errors.hpp"
#include "test_support.hpp"

namespace armform {
namespace {

using testing::bundled_scenario_text;
using testing::replace_once;
using testing::replace_section;

std::string parse_error(const std::string& text) {
  try {
    parse_scenario_text(text);
  } catch (const ScenarioError& e) {
    return e.what();
  }
  return "";
}

TEST(ScenarioParseTest, BundledScenario) {
  const Scenario sc = testing::bundled_scenario();
  ASSERT_EQ(sc.agents.size(), 4u);
  EXPECT_EQ(sc.gains.kp, 800.0);
  EXPECT_EQ(sc.gains.kd, 600.0);
  EXPECT_EQ(sc.graph.edge_count(), 5);
  EXPECT_EQ(sc.graph.strategy(), Strategy::distance);
  EXPECT_EQ(sc.duration, 30.0);
  EXPECT_EQ(sc.dt, 1e-3);
  EXPECT_EQ(sc.log_stride, 10);

  EXPECT_EQ(sc.agents[0].params, reference_arm());
  EXPECT_EQ(sc.agents[2].params.base, Vec2(5.0, 3.0));
  EXPECT_EQ(sc.agents[1].initial.q, Vec2(2 * std::numbers::pi / 3, std::numbers::pi / 3));
  EXPECT_EQ(sc.agents[3].initial.q, Vec2(0.0, -std::numbers::pi / 3));
  EXPECT_TRUE(sc.agents[3].initial.qdot.isZero(0.0));

  EXPECT_NEAR(sc.graph.lengths()[0], 0.4, 1e-15);
  EXPECT_NEAR(sc.graph.lengths()[4], 0.4 * std::numbers::sqrt2, 1e-15);
  EXPECT_EQ(sc.graph.edges()[3], (Edge{3, 0}));

  const AgentSpec& a = sc.agents[1];
  ASSERT_EQ(a.force_disturbance.size(), 2u);
  EXPECT_EQ(a.force_disturbance[1], (SinusoidTerm{1, 0.5, std::numbers::pi / 2, 0.0}));
  EXPECT_EQ(a.torque_model, InternalModelSpec::from_modes({{0, 1.0}, {1, 1.0}}));
  EXPECT_EQ(a.force_model,
            InternalModelSpec::from_modes({{0, std::numbers::pi / 2}, {1, std::numbers::pi / 2}}));
}

TEST(ScenarioParseTest, Overrides) {
  const Scenario sc = parse_scenario_text(
      bundled_scenario_text(), {.strategy = Strategy::displacement, .duration = 2.0, .dt = 5e-4});
  EXPECT_EQ(sc.graph.strategy(), Strategy::displacement);
  EXPECT_EQ(sc.graph.offsets()[4], Vec2(-0.4, -0.4));
  EXPECT_EQ(sc.duration, 2.0);
  EXPECT_EQ(sc.dt, 5e-4);
}

TEST(ScenarioParseTest, DisabledInternalModel) {
  const std::string text = replace_section(bundled_scenario_text(), "internal_model",
                                           "enabled = false\n");
  const Scenario sc = parse_scenario_text(text);
  for (const AgentSpec& a : sc.agents) {
    EXPECT_EQ(a.torque_model.dim(), 0);
    EXPECT_EQ(a.force_model.dim(), 0);
  }
}

TEST(ScenarioParseTest, ModesAndPerAgentKeys) {
  std::string text = replace_section(bundled_scenario_text(), "internal_model",
                                     "torque = 1, 1\ntorque = 2, 1\n"
                                     "force = 1, pi/2\nforce = 2, pi/2\n");
  text = replace_once(text, "gravity = 0", "gravity = 0\nm2@3 = 2.5");
  const Scenario sc = parse_scenario_text(text);
  EXPECT_EQ(sc.agents[0].torque_model, parse_scenario_text(bundled_scenario_text()).agents[0].torque_model);
  EXPECT_EQ(sc.agents[2].params.m2, 2.5);
  EXPECT_EQ(sc.agents[1].params.m2, 1.0);
}

TEST(ScenarioParseTest, NegativeMass) {
  const std::string msg = parse_error(replace_once(bundled_scenario_text(), "m1 = 1.2", "m1 = -1.2"));
  EXPECT_NE(msg.find("invariant violated: m1 > 0"), std::string::npos) << msg;
}

TEST(ScenarioParseTest, EdgeOutsideGraph) {
  const std::string msg =
      parse_error(replace_once(bundled_scenario_text(), "edge = 1, 3,", "edge = 1, 5,"));
  EXPECT_NE(msg.find("edge (1, 5)"), std::string::npos) << msg;
  EXPECT_NE(msg.find("invariant violated"), std::string::npos) << msg;
}

TEST(ScenarioParseTest, MissingKey) {
  const std::string msg = parse_error(replace_once(bundled_scenario_text(), "kd = 600\n", ""));
  EXPECT_NE(msg.find("missing key: gains.kd"), std::string::npos) << msg;
}

TEST(ScenarioParseTest, UnknownKeyAndSection) {
  std::string msg = parse_error(replace_once(bundled_scenario_text(), "kd = 600", "kd = 600\nki = 3"));
  EXPECT_NE(msg.find("unknown key 'ki'"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line "), std::string::npos) << msg;
  msg = parse_error(bundled_scenario_text() + "\n[extras]\n");
  EXPECT_NE(msg.find("unknown section"), std::string::npos) << msg;
}

TEST(ScenarioParseTest, DuplicateKey) {
  const std::string msg =
      parse_error(replace_once(bundled_scenario_text(), "kd = 600", "kd = 600\nkd = 500"));
  EXPECT_NE(msg.find("duplicate key 'kd'"), std::string::npos) << msg;
}

TEST(ScenarioParseTest, BadValues) {
  for (const auto& [from, to] : std::vector<std::pair<std::string, std::string>>{
           {"dt = 1e-3", "dt = -1"},
           {"kp = 800", "kp = 0"},
           {"log_stride = 10", "log_stride = 0"},
           {"strategy = distance", "strategy = bearing"},
           {"torque = 1, 1, 1, 0", "torque = 3, 1, 1, 0"},
           {"agent = 0, 0, 0, pi/3", "agent = 0, 0, 0"},
           {"Gamma_M = 1, 0, 0, 0; 0, 0, 1, 0", "Gamma_M = 1, 0, 0; 0, 0, 1"},
           {"kd = 600", "kd = 6oo"}}) {
    const std::string text = replace_once(bundled_scenario_text(), from, to);
    ASSERT_NE(text, bundled_scenario_text()) << from;
    EXPECT_FALSE(parse_error(text).empty()) << to;
  }
}

TEST(ScenarioParseTest, DisplacementNeedsOffsets) {
  std::string text = replace_once(bundled_scenario_text(), "edge = 1, 2, -0.4, 0", "edge = 1, 2, 0.4");
  EXPECT_NO_THROW(parse_scenario_text(text));
  text = replace_once(text, "strategy = distance", "strategy = displacement");
  EXPECT_NE(parse_error(text).find("offset"), std::string::npos);
}

TEST(ScenarioParseTest, MissingFile) {
  EXPECT_THROW(parse_scenario("/nonexistent/none.scenario"), ScenarioError);
}

TEST(ScenarioParseTest, FileErrorsNameThePath) {
  const auto path = std::filesystem::temp_directory_path() / "armform_bad.scenario";
  std::ofstream(path) << "[sim]\nduration = 1\n";
  try {
    parse_scenario(path);
    FAIL();
  } catch (const ScenarioError& e) {
    EXPECT_NE(std::string(e.what()).find(path.string()), std::string::npos);
  }
  std::filesystem::remove(path);
}

Scenario random_scenario(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto pick = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };
  const int n = 2 + static_cast<int>(rng() % 4);
  const bool shared = rng() % 2 == 0;
  const ManipulatorParams common = [&] {
    ManipulatorParams p;
    p.m1 = pick(0.5, 3.0);
    p.m2 = pick(0.5, 3.0);
    p.Ic1 = pick(0.01, 1.0);
    p.Ic2 = pick(0.01, 1.0);
    p.l1 = pick(0.5, 2.0);
    p.l2 = pick(0.5, 2.0);
    p.lc1 = p.l1 * pick(0.1, 0.9);
    p.lc2 = p.l2 * pick(0.1, 0.9);
    return p;
  }();
  Scenario sc;
  for (int i = 0; i < n; ++i) {
    AgentSpec a;
    a.params = common;
    if (!shared) a.params.m2 = pick(0.5, 3.0);
    if (rng() % 3 == 0) a.params.gravity = pick(0.0, 10.0);
    a.params.base = Vec2(pick(-5, 5), pick(-5, 5));
    a.initial.q = Vec2(pick(-3, 3), pick(-3, 3));
    a.initial.qdot = Vec2(pick(-1, 1), pick(-1, 1));
    std::vector<ModelMode> modes;
    for (int t = 0, terms = static_cast<int>(rng() % 3); t < terms; ++t) {
      const int ch = static_cast<int>(rng() % 2);
      const double w = rng() % 4 == 0 ? 0.0 : pick(0.1, 5.0);
      a.torque_disturbance.push_back({ch, pick(-2, 2), w, w == 0.0 ? 0.0 : pick(-3, 3)});
      modes.push_back({ch, w});
    }
    if (rng() % 2) a.force_disturbance.push_back({1, pick(-1, 1), pick(0.1, 3.0), pick(-3, 3)});
    a.torque_model = InternalModelSpec::from_modes(modes);
    if (!shared) a.force_model = InternalModelSpec::from_modes({{0, pick(0.1, 3.0)}});
    sc.agents.push_back(a);
  }
  if (shared) {
    for (AgentSpec& a : sc.agents) {
      a.torque_disturbance = sc.agents[0].torque_disturbance;
      a.force_disturbance = sc.agents[0].force_disturbance;
      a.torque_model = sc.agents[0].torque_model;
    }
  }
  // Complete graph with random orientation; n(n-1)/2 >= 2n - 3 for n >= 2.
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.push_back(rng() % 2 ? Edge{i, j} : Edge{j, i});
  }
  if (rng() % 2) {
    std::vector<double> lengths;
    for (std::size_t k = 0; k < edges.size(); ++k) lengths.push_back(pick(0.1, 2.0));
    sc.graph = FormationGraph::distance(n, edges, lengths);
  } else {
    std::vector<Vec2> offsets;
    for (std::size_t k = 0; k < edges.size(); ++k) offsets.emplace_back(pick(-1, 1), pick(-1, 1));
    sc.graph = FormationGraph::displacement(n, edges, offsets);
  }
  sc.gains = {pick(1, 1000), pick(1, 1000)};
  sc.duration = pick(0.1, 60);
  sc.dt = pick(1e-4, 1e-2);
  sc.log_stride = 1 + static_cast<int>(rng() % 50);
  sc.validate();
  return sc;
}

TEST(ScenarioRoundTripTest, BundledScenario) {
  const Scenario sc = testing::bundled_scenario();
  EXPECT_EQ(parse_scenario_text(serialize_scenario(sc)), sc);
}

TEST(ScenarioRoundTripTest, RandomScenarios) {
  std::mt19937_64 rng(47);
  for (int s = 0; s < 200; ++s) {
    const Scenario sc = random_scenario(rng);
    const std::string text = serialize_scenario(sc);
    Scenario back;
    ASSERT_NO_THROW(back = parse_scenario_text(text)) << text;
    EXPECT_EQ(back, sc) << text;
    EXPECT_EQ(serialize_scenario(back), text);
  }
}

}  // namespace
}  // namespace armform

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

#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "armform/expression.hpp"

namespace armform {

namespace {

struct Entry {
  std::string section;
  std::string key;
  int agent = 0;  // 1-based; 0 applies to every agent
  std::string value;
  int line = 0;
};

struct KeyRule {
  bool required = false;
  bool repeatable = false;
  bool per_agent = false;
};

const std::map<std::string, std::map<std::string, KeyRule>>& grammar() {
  static const std::map<std::string, std::map<std::string, KeyRule>> rules = {
      {"sim", {{"duration", {true, false, false}},
               {"dt", {false, false, false}},
               {"log_stride", {false, false, false}}}},
      {"gains", {{"kp", {true, false, false}}, {"kd", {true, false, false}}}},
      {"agents", {{"agent", {true, true, false}},
                  {"m1", {false, false, true}},
                  {"m2", {false, false, true}},
                  {"Ic1", {false, false, true}},
                  {"Ic2", {false, false, true}},
                  {"l1", {false, false, true}},
                  {"l2", {false, false, true}},
                  {"lc1", {false, false, true}},
                  {"lc2", {false, false, true}},
                  {"gravity", {false, false, true}}}},
      {"graph", {{"strategy", {true, false, false}}, {"edge", {true, true, false}}}},
      {"disturbances", {{"torque", {false, true, true}}, {"force", {false, true, true}}}},
      {"internal_model", {{"enabled", {false, false, false}},
                          {"torque", {false, true, true}},
                          {"force", {false, true, true}},
                          {"A_M", {false, false, true}},
                          {"Gamma_M", {false, false, true}},
                          {"A_E", {false, false, true}},
                          {"Gamma_E", {false, false, true}}}},
  };
  return rules;
}

const char* const kParamNames[] = {"m1", "m2", "Ic1", "Ic2", "l1", "l2", "lc1", "lc2"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail_at(int line, const std::string& why) {
  throw ScenarioError("line " + std::to_string(line) + ": " + why);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

double number(const Entry& e, const std::string& text) {
  try {
    return evaluate_expression(text);
  } catch (const Error& err) {
    fail_at(e.line, err.what());
  }
}

double scalar(const Entry& e) { return number(e, e.value); }

std::vector<double> numbers(const Entry& e, std::size_t min_count, std::size_t max_count) {
  std::vector<double> out;
  for (const std::string& part : split(e.value, ',')) {
    if (part.empty()) fail_at(e.line, "empty value in '" + e.key + "'");
    out.push_back(number(e, part));
  }
  if (out.size() < min_count || out.size() > max_count) {
    std::ostringstream why;
    why << "'" << e.key << "' takes ";
    if (min_count == max_count) {
      why << min_count;
    } else {
      why << min_count << " to " << max_count;
    }
    why << " comma-separated values, got " << out.size();
    fail_at(e.line, why.str());
  }
  return out;
}

int index_value(const Entry& e, double v, const char* what, int upper) {
  if (v != std::floor(v) || v < 1 || v > upper) {
    std::ostringstream why;
    why << "invariant violated: " << what << " " << v << " in '" << e.key
        << "' is outside 1.." << upper;
    fail_at(e.line, why.str());
  }
  return static_cast<int>(v);
}

Eigen::MatrixXd matrix(const Entry& e, bool is_gamma) {
  if (e.value == "none") {
    return is_gamma ? Eigen::MatrixXd::Zero(Exosystem::kChannels, 0) : Eigen::MatrixXd::Zero(0, 0);
  }
  std::vector<std::vector<double>> rows;
  for (const std::string& row : split(e.value, ';')) {
    std::vector<double> vals;
    for (const std::string& part : split(row, ',')) {
      if (part.empty()) fail_at(e.line, "empty matrix entry in '" + e.key + "'");
      vals.push_back(number(e, part));
    }
    if (!rows.empty() && vals.size() != rows.front().size()) {
      fail_at(e.line, "rows of '" + e.key + "' have different lengths");
    }
    rows.push_back(std::move(vals));
  }
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

class Document {
 public:
  explicit Document(std::string_view text) { lex(text); }

  // Entry for (section, key) scoped to `agent`, falling back to the
  // unscoped entry.
  const Entry* find(const std::string& section, const std::string& key, int agent = 0) const {
    const Entry* global = nullptr;
    for (const Entry& e : entries_) {
      if (e.section != section || e.key != key) continue;
      if (agent != 0 && e.agent == agent) return &e;
      if (e.agent == 0) global = &e;
    }
    return global;
  }

  const Entry& require(const std::string& section, const std::string& key, int agent = 0) const {
    const Entry* e = find(section, key, agent);
    if (!e) {
      std::string msg = "missing key: " + section + "." + key;
      if (agent != 0) msg += " (agent " + std::to_string(agent) + ")";
      throw ScenarioError(msg);
    }
    return *e;
  }

  // Unscoped entries plus those scoped to `agent`, in file order.
  std::vector<const Entry*> all(const std::string& section, const std::string& key,
                                int agent = -1) const {
    std::vector<const Entry*> out;
    for (const Entry& e : entries_) {
      if (e.section == section && e.key == key && (agent < 0 || e.agent == 0 || e.agent == agent)) {
        out.push_back(&e);
      }
    }
    return out;
  }

  bool has_section(const std::string& section) const { return sections_.count(section) != 0; }
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  void lex(std::string_view text) {
    std::string section;
    std::set<std::tuple<std::string, std::string, int>> seen;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no;
      const auto hash = raw.find('#');
      const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail_at(line_no, "malformed section header");
        section = trim(line.substr(1, line.size() - 2));
        if (!grammar().count(section)) fail_at(line_no, "unknown section [" + section + "]");
        if (!sections_.insert(section).second) {
          fail_at(line_no, "section [" + section + "] appears twice");
        }
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) fail_at(line_no, "expected 'key = value'");
      if (section.empty()) fail_at(line_no, "entry outside of a section");
      Entry e;
      e.section = section;
      e.line = line_no;
      e.key = trim(line.substr(0, eq));
      e.value = trim(line.substr(eq + 1));
      if (const auto at = e.key.find('@'); at != std::string::npos) {
        const std::string idx = e.key.substr(at + 1);
        e.key = trim(e.key.substr(0, at));
        char* stop = nullptr;
        const long v = std::strtol(idx.c_str(), &stop, 10);
        if (idx.empty() || *stop != '\0' || v < 1) {
          fail_at(line_no, "bad agent index '@" + idx + "'");
        }
        e.agent = static_cast<int>(v);
      }
      const auto& keys = grammar().at(section);
      const auto rule = keys.find(e.key);
      if (rule == keys.end()) {
        fail_at(line_no, "unknown key '" + e.key + "' in [" + section + "]");
      }
      if (e.agent != 0 && !rule->second.per_agent) {
        fail_at(line_no, "key '" + e.key + "' cannot be scoped to an agent");
      }
      if (e.value.empty()) fail_at(line_no, "empty value for '" + e.key + "'");
      if (!rule->second.repeatable && !seen.emplace(section, e.key, e.agent).second) {
        fail_at(line_no, "duplicate key '" + e.key + "'");
      }
      entries_.push_back(std::move(e));
    }
  }

  std::vector<Entry> entries_;
  std::set<std::string> sections_;
};

SinusoidTerm sinusoid(const Entry& e) {
  const std::vector<double> v = numbers(e, 3, 4);
  SinusoidTerm t;
  t.channel = index_value(e, v[0], "channel", Exosystem::kChannels) - 1;
  t.amplitude = v[1];
  t.frequency = v[2];
  t.phase = v.size() > 3 ? v[3] : 0.0;
  if (!(t.frequency >= 0.0)) fail_at(e.line, "invariant violated: frequency >= 0");
  if (t.frequency == 0.0 && t.phase != 0.0) {
    fail_at(e.line, "invariant violated: step disturbance (frequency 0) has phase 0");
  }
  return t;
}

ModelMode mode(const Entry& e) {
  const std::vector<double> v = numbers(e, 2, 2);
  ModelMode m;
  m.channel = index_value(e, v[0], "channel", Exosystem::kChannels) - 1;
  m.frequency = v[1];
  if (!(m.frequency >= 0.0)) fail_at(e.line, "invariant violated: frequency >= 0");
  return m;
}

InternalModelSpec build_model(const Document& doc, int agent, const char* mode_key,
                              const char* suffix) {
  const std::string a_key = std::string("A_") + suffix;
  const std::string g_key = std::string("Gamma_") + suffix;
  const Entry* a = doc.find("internal_model", a_key, agent);
  const Entry* g = doc.find("internal_model", g_key, agent);
  const std::vector<const Entry*> modes = doc.all("internal_model", mode_key, agent);
  if (a || g) {
    if (!a || !g) {
      throw ScenarioError("missing key: internal_model." + (a ? g_key : a_key) +
                          " (given together with " + (a ? a_key : g_key) + ")");
    }
    if (!modes.empty()) {
      fail_at(modes.front()->line, "'" + std::string(mode_key) + "' modes cannot be combined with " +
                                       a_key + " / " + g_key);
    }
    InternalModelSpec spec{matrix(*a, false), matrix(*g, true)};
    try {
      spec.check_dimensions(suffix);
    } catch (const Error& err) {
      fail_at(g->line, err.what());
    }
    return spec;
  }
  std::vector<ModelMode> list;
  for (const Entry* e : modes) list.push_back(mode(*e));
  return InternalModelSpec::from_modes(list);
}

void check_agent_scopes(const Document& doc, int agent_count) {
  for (const Entry& e : doc.entries()) {
    if (e.agent > agent_count) {
      fail_at(e.line, "invariant violated: agent index @" + std::to_string(e.agent) +
                          " exceeds the " + std::to_string(agent_count) + " agents");
    }
  }
}

}  // namespace

Scenario parse_scenario_text(std::string_view text, const ScenarioOverrides& overrides) {
  const Document doc(text);
  Scenario sc;

  // [sim]
  sc.duration = scalar(doc.require("sim", "duration"));
  if (const Entry* e = doc.find("sim", "dt")) sc.dt = scalar(*e);
  if (const Entry* e = doc.find("sim", "log_stride")) {
    const double v = scalar(*e);
    if (v != std::floor(v) || v < 1) fail_at(e->line, "invariant violated: log_stride >= 1");
    sc.log_stride = static_cast<int>(v);
  }
  if (overrides.duration) sc.duration = *overrides.duration;
  if (overrides.dt) sc.dt = *overrides.dt;

  // [gains]
  sc.gains.kp = scalar(doc.require("gains", "kp"));
  sc.gains.kd = scalar(doc.require("gains", "kd"));

  // [agents]
  const std::vector<const Entry*> agent_lines = doc.all("agents", "agent");
  if (agent_lines.empty()) throw ScenarioError("missing key: agents.agent");
  const int n = static_cast<int>(agent_lines.size());
  check_agent_scopes(doc, n);
  for (int i = 1; i <= n; ++i) {
    const Entry& line = *agent_lines[i - 1];
    const std::vector<double> v = numbers(line, 4, 6);
    AgentSpec a;
    double* fields[] = {&a.params.m1, &a.params.m2, &a.params.Ic1, &a.params.Ic2,
                        &a.params.l1, &a.params.l2, &a.params.lc1, &a.params.lc2};
    for (std::size_t f = 0; f < std::size(kParamNames); ++f) {
      *fields[f] = scalar(doc.require("agents", kParamNames[f], i));
    }
    if (const Entry* g = doc.find("agents", "gravity", i)) a.params.gravity = scalar(*g);
    a.params.base = Vec2(v[0], v[1]);
    a.initial.q = Vec2(v[2], v[3]);
    if (v.size() == 6) {
      a.initial.qdot = Vec2(v[4], v[5]);
    } else if (v.size() == 5) {
      fail_at(line.line, "'agent' takes base x, base y, q1, q2 and optionally qdot1, qdot2");
    }
    try {
      a.params.validate();
    } catch (const InvariantViolation& err) {
      throw ScenarioError("agent " + std::to_string(i) + " (line " + std::to_string(line.line) +
                          "): " + err.what());
    }
    for (const Entry* e : doc.all("disturbances", "torque", i)) {
      a.torque_disturbance.push_back(sinusoid(*e));
    }
    for (const Entry* e : doc.all("disturbances", "force", i)) {
      a.force_disturbance.push_back(sinusoid(*e));
    }
    sc.agents.push_back(std::move(a));
  }

  // [internal_model]
  bool compensate = true;
  if (const Entry* e = doc.find("internal_model", "enabled")) {
    if (e->value == "true") {
      compensate = true;
    } else if (e->value == "false") {
      compensate = false;
    } else {
      fail_at(e->line, "'enabled' is true or false");
    }
  }
  if (!compensate) {
    for (const Entry& e : doc.entries()) {
      if (e.section == "internal_model" && e.key != "enabled") {
        fail_at(e.line, "'" + e.key + "' given while the internal model is disabled");
      }
    }
  }
  for (int i = 1; i <= n; ++i) {
    AgentSpec& a = sc.agents[i - 1];
    if (compensate) {
      a.torque_model = build_model(doc, i, "torque", "M");
      a.force_model = build_model(doc, i, "force", "E");
    }
  }

  // [graph]
  const Entry& strategy_entry = doc.require("graph", "strategy");
  Strategy strategy;
  try {
    strategy = parse_strategy(strategy_entry.value);
  } catch (const Error& err) {
    fail_at(strategy_entry.line, err.what());
  }
  if (overrides.strategy) strategy = *overrides.strategy;

  std::vector<Edge> edges;
  std::vector<double> lengths;
  std::vector<Vec2> offsets;
  bool all_offsets = true;
  for (const Entry* e : doc.all("graph", "edge")) {
    const std::vector<double> v = numbers(*e, 3, 4);
    for (int end = 0; end < 2; ++end) {
      if (v[end] != std::floor(v[end]) || v[end] < 1 || v[end] > n) {
        std::ostringstream why;
        why << "invariant violated: edge (" << v[0] << ", " << v[1] << ") references vertex "
            << v[end] << " but the graph has " << n << " vertices";
        fail_at(e->line, why.str());
      }
    }
    edges.push_back(Edge{static_cast<int>(v[0]) - 1, static_cast<int>(v[1]) - 1});
    if (v.size() == 4) {
      offsets.emplace_back(v[2], v[3]);
      lengths.push_back(offsets.back().norm());
    } else {
      all_offsets = false;
      offsets.emplace_back(Vec2::Zero());
      lengths.push_back(v[2]);
    }
  }
  try {
    if (strategy == Strategy::distance) {
      sc.graph = FormationGraph::distance(n, edges, lengths);
    } else {
      if (!all_offsets) {
        throw ScenarioError(
            "invariant violated: displacement strategy needs an offset (x, y) on every edge");
      }
      sc.graph = FormationGraph::displacement(n, edges, offsets);
    }
    sc.validate();
  } catch (const ScenarioError&) {
    throw;
  } catch (const Error& err) {
    throw ScenarioError(err.what());
  }
  return sc;
}

Scenario parse_scenario(const std::filesystem::path& path, const ScenarioOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot read scenario file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_scenario_text(buffer.str(), overrides);
  } catch (const ScenarioError& err) {
    throw ScenarioError(path.string() + ": " + err.what());
  }
}

namespace {

std::string format_matrix(const Eigen::MatrixXd& m) {
  if (m.cols() == 0) return "none";
  std::ostringstream out;
  out << std::setprecision(17);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (r) out << "; ";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ", ";
      out << m(r, c);
    }
  }
  return out.str();
}

template <typename T, typename Get>
bool uniform(const std::vector<AgentSpec>& agents, Get get) {
  for (const AgentSpec& a : agents) {
    if (!(static_cast<const T&>(get(a)) == static_cast<const T&>(get(agents.front())))) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string serialize_scenario(const Scenario& sc) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "[sim]\n"
      << "duration = " << sc.duration << '\n'
      << "dt = " << sc.dt << '\n'
      << "log_stride = " << sc.log_stride << "\n\n";
  out << "[gains]\n"
      << "kp = " << sc.gains.kp << '\n'
      << "kd = " << sc.gains.kd << "\n\n";

  out << "[agents]\n";
  const ManipulatorParams& first = sc.agents.front().params;
  auto fields = [](const ManipulatorParams& p) {
    return std::vector<double>{p.m1, p.m2, p.Ic1, p.Ic2, p.l1, p.l2, p.lc1, p.lc2, p.gravity};
  };
  const std::vector<double> base_fields = fields(first);
  const char* names[] = {"m1", "m2", "Ic1", "Ic2", "l1", "l2", "lc1", "lc2", "gravity"};
  for (std::size_t f = 0; f < base_fields.size(); ++f) {
    out << names[f] << " = " << base_fields[f] << '\n';
  }
  for (std::size_t i = 0; i < sc.agents.size(); ++i) {
    const std::vector<double> mine = fields(sc.agents[i].params);
    for (std::size_t f = 0; f < mine.size(); ++f) {
      if (mine[f] != base_fields[f]) out << names[f] << '@' << i + 1 << " = " << mine[f] << '\n';
    }
  }
  for (const AgentSpec& a : sc.agents) {
    out << "agent = " << a.params.base.x() << ", " << a.params.base.y() << ", "
        << a.initial.q(0) << ", " << a.initial.q(1) << ", " << a.initial.qdot(0) << ", "
        << a.initial.qdot(1) << '\n';
  }
  out << '\n';

  out << "[graph]\n"
      << "strategy = " << to_string(sc.graph.strategy()) << '\n';
  for (int k = 0; k < sc.graph.edge_count(); ++k) {
    const Edge& e = sc.graph.edges()[k];
    out << "edge = " << e.tail + 1 << ", " << e.head + 1 << ", ";
    if (sc.graph.strategy() == Strategy::distance) {
      out << sc.graph.lengths()[k] << '\n';
    } else {
      out << sc.graph.offsets()[k].x() << ", " << sc.graph.offsets()[k].y() << '\n';
    }
  }
  out << '\n';

  out << "[disturbances]\n";
  auto write_terms = [&](const char* key, auto get) {
    const bool same = uniform<std::vector<SinusoidTerm>>(sc.agents, get);
    for (std::size_t i = 0; i < (same ? 1 : sc.agents.size()); ++i) {
      for (const SinusoidTerm& t : get(sc.agents[i])) {
        out << key;
        if (!same) out << '@' << i + 1;
        out << " = " << t.channel + 1 << ", " << t.amplitude << ", " << t.frequency << ", "
            << t.phase << '\n';
      }
    }
  };
  write_terms("torque", [](const AgentSpec& a) -> const std::vector<SinusoidTerm>& {
    return a.torque_disturbance;
  });
  write_terms("force", [](const AgentSpec& a) -> const std::vector<SinusoidTerm>& {
    return a.force_disturbance;
  });
  out << '\n';

  out << "[internal_model]\n";
  auto write_model = [&](const char* suffix, auto get) {
    const bool same = uniform<InternalModelSpec>(sc.agents, get);
    for (std::size_t i = 0; i < (same ? 1 : sc.agents.size()); ++i) {
      const InternalModelSpec& m = get(sc.agents[i]);
      const std::string scope = same ? "" : "@" + std::to_string(i + 1);
      out << "A_" << suffix << scope << " = " << format_matrix(m.A) << '\n';
      out << "Gamma_" << suffix << scope << " = " << format_matrix(m.Gamma) << '\n';
    }
  };
  write_model("M", [](const AgentSpec& a) -> const InternalModelSpec& { return a.torque_model; });
  write_model("E", [](const AgentSpec& a) -> const InternalModelSpec& { return a.force_model; });
  return out.str();
}

}  // namespace armform

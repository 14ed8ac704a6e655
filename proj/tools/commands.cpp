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

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "armform/csv.hpp"
#include "armform/engine.hpp"
#include "armform/metrics.hpp"
#include "armform/scenario.hpp"
#include "armform/svg_plot.hpp"
#include "checks.hpp"

namespace armform::tools {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path.string() + "'");
  f << content;
  if (!f) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace

int run_command(const RunOptions& options, std::ostream& out, std::ostream& err) {
  Scenario scenario;
  try {
    scenario = parse_scenario(options.scenario,
                              ScenarioOverrides{options.strategy, options.duration, options.dt});
    if (!(options.tail > 0.0) || !(options.tail < scenario.duration)) {
      throw ScenarioError("invariant violated: 0 < tail < duration (tail = " +
                          std::to_string(options.tail) + ")");
    }
    if (options.threads < 1) throw ScenarioError("invariant violated: threads >= 1");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitScenarioError;
  }

  SimLog log;
  try {
    SimOptions sim;
    sim.threads = options.threads;
    sim.on_warning = [&err](const std::string& msg) { err << "warning: " << msg << '\n'; };
    log = simulate(scenario, sim);
  } catch (const SimulationAbort& e) {
    err << "simulation aborted: " << e.what() << '\n';
    return kExitSimulationAbort;
  }

  try {
    std::filesystem::create_directories(options.out_dir);
    const std::string csv = to_csv(log);
    write_file(options.out_dir / "log.csv", csv);
    const ConvergenceMetrics metrics = convergence_metrics(log, options.tail);
    write_file(options.out_dir / "metrics.txt", format_metrics(metrics));
    if (options.plots) {
      const CsvTable table = parse_csv(csv);
      write_file(options.out_dir / "trajectories.svg", trajectories_svg(table));
      write_file(options.out_dir / "edge_errors.svg", edge_errors_svg(table));
      write_file(options.out_dir / "effector_states.svg", effector_states_svg(table));
      write_file(options.out_dir / "joint_states.svg", joint_states_svg(table));
    }
    out << "simulated " << scenario.duration << " s (" << scenario.step_count()
        << " steps), wrote " << log.rows.size() << " rows to "
        << (options.out_dir / "log.csv").string() << '\n'
        << format_metrics(metrics);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitScenarioError;
  }
  return kExitOk;
}

int verify_command(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  Scenario scenario;
  try {
    scenario = parse_scenario(options.scenario);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitScenarioError;
  }

  const std::vector<CheckResult> results = run_checks(scenario);
  bool all = true;
  out << std::left << std::setw(34) << "check" << std::setw(7) << "agent" << std::setw(14)
      << "value" << std::setw(10) << "tol" << "result\n";
  for (const CheckResult& r : results) {
    all = all && r.passed;
    std::ostringstream value;
    value << std::setprecision(3) << r.value;
    std::ostringstream tol;
    tol << std::setprecision(1) << r.tolerance;
    out << std::setw(34) << r.name << std::setw(7) << r.agent << std::setw(14)
        << (r.tolerance > 0.0 ? value.str() : "-") << std::setw(10)
        << (r.tolerance > 0.0 ? tol.str() : "-") << (r.passed ? "PASS" : "FAIL");
    if (!r.detail.empty()) out << "  " << r.detail;
    out << '\n';
  }
  if (!all) {
    for (const CheckResult& r : results) {
      if (!r.passed) {
        err << "check failed: " << r.name << " (agent " << r.agent << ")"
            << (r.detail.empty() ? "" : ": " + r.detail) << '\n';
      }
    }
    return kExitCheckFailed;
  }
  out << "all " << results.size() << " checks passed\n";
  return kExitOk;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distributed end-effector formation control simulator", "armform"};
  app.require_subcommand(1);

  RunOptions run;
  std::string run_strategy;
  std::string plots = "on";
  std::string out_dir = run.out_dir.string();
  std::string scenario_path;
  double duration = 0.0;
  double dt = 0.0;
  CLI::App* run_cmd = app.add_subcommand("run", "simulate a scenario and write logs and plots");
  run_cmd->add_option("--scenario", scenario_path, "scenario file")->required();
  run_cmd->add_option("--out", out_dir, "output directory")->capture_default_str();
  CLI::Option* duration_opt = run_cmd->add_option("--duration", duration, "override [sim] duration (s)");
  CLI::Option* dt_opt = run_cmd->add_option("--dt", dt, "override [sim] dt (s)");
  run_cmd->add_option("--strategy", run_strategy, "override [graph] strategy")
      ->check(CLI::IsMember({"distance", "displacement"}));
  run_cmd->add_option("--plots", plots, "write SVG plots")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  run_cmd->add_option("--tail", run.tail, "metrics window (s)")->capture_default_str();
  run_cmd->add_option("--threads", run.threads, "threads for per-arm evaluation")
      ->capture_default_str();

  VerifyOptions verify;
  std::string verify_path = verify.scenario.string();
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "check regulator, observability, skew-symmetry, Jacobian");
  verify_cmd->add_option("--scenario", verify_path, "scenario file")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitScenarioError;
  }

  if (*run_cmd) {
    run.scenario = scenario_path;
    run.out_dir = out_dir;
    if (*duration_opt) run.duration = duration;
    if (*dt_opt) run.dt = dt;
    if (!run_strategy.empty()) run.strategy = parse_strategy(run_strategy);
    run.plots = plots == "on";
    return run_command(run, out, err);
  }
  verify.scenario = verify_path;
  return verify_command(verify, out, err);
}

}  // namespace armform::tools

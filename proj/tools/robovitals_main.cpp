// Copyright 2026 The robovitals Authors
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

// robovitals: simulate, replay, monitor and experiment front end.
//
// Exit codes: 0 success, 1 internal failure, 2 input error, 3 not enough
// data to compute a result.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "robovitals/analysis.hpp"
#include "robovitals/config.hpp"
#include "robovitals/errors.hpp"
#include "robovitals/health.hpp"
#include "robovitals/sim.hpp"
#include "robovitals/telemetry.hpp"
#include "robovitals/vitals.hpp"

namespace fs = std::filesystem;
using namespace robovitals;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitInsufficient = 3;

struct CommonOptions {
  std::vector<std::string> overrides;
  std::optional<double> threshold;

  EngineConfig Build() const {
    EngineConfig cfg;
    for (const auto& o : overrides) ApplyOverride(cfg, o);
    if (threshold) cfg.health.alert_threshold = *threshold;
    try {
      cfg.vitals.Validate();
      cfg.health.Validate();
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    return cfg;
  }
};

void AddCommon(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--set", opts.overrides, "Config override key=value (repeatable)");
  cmd->add_option("--threshold", opts.threshold, "Alert threshold (health units)");
}

std::ofstream OpenOutput(const fs::path& dir, const std::string& name) {
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw InputError("cannot write " + (dir / name).string());
  return out;
}

void EnsureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + dir.string());
}

int Simulate(const std::string& scenario_path, std::optional<std::uint64_t> seed,
             const fs::path& out_dir, const EngineConfig& cfg) {
  std::ifstream in(scenario_path);
  if (!in) throw InputError("cannot open scenario " + scenario_path);
  ScenarioConfig scenario = ParseScenario(in, seed);
  scenario.params = cfg.ApplyRobot(scenario.params);
  scenario.Validate();

  const TrialResult result = RunTrial(scenario, cfg.vitals, cfg.health);
  EnsureDir(out_dir);
  auto log_out = OpenOutput(out_dir, "telemetry.jsonl");
  WriteLog(log_out, result.log);
  auto trial_out = OpenOutput(out_dir, "trial.csv");
  WriteTrialCsv(trial_out, result);
  auto health_out = OpenOutput(out_dir, "health.csv");
  WriteHealthCsv(health_out, result.health_series);
  std::cout << fmt::format("completed={} T_comp={} avg_health={:.6f} alerts={}\n",
                           result.completed, result.t_comp, result.avg_health,
                           result.alerts.size());
  return kExitOk;
}

int Replay(const std::string& log_path, const fs::path& out_dir, const EngineConfig& cfg) {
  std::ifstream in(log_path);
  if (!in) throw InputError("cannot open log " + log_path);
  TelemetryLog log = Resample1Hz(ParseLog(in));
  log.params = cfg.ApplyRobot(log.params);
  try {
    log.params.Validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }

  const std::vector<VitalSet> vitals = ComputeVitals(log, cfg.vitals);
  HealthTracker tracker(cfg.health);
  std::vector<HealthSample> series;
  series.reserve(vitals.size());
  for (const auto& set : vitals) series.push_back(tracker.Update(set.front().t, set));
  const std::vector<AlertEvent> alerts = DetectAlerts(series, cfg.health);

  EnsureDir(out_dir);
  auto vitals_out = OpenOutput(out_dir, "vitals.csv");
  WriteVitalsCsv(vitals_out, vitals);
  auto health_out = OpenOutput(out_dir, "health.csv");
  WriteHealthCsv(health_out, series);
  auto alerts_out = OpenOutput(out_dir, "alerts.csv");
  WriteAlertsCsv(alerts_out, alerts);
  std::cout << fmt::format("ticks={} avg_health={:.6f} alerts={}\n", series.size(),
                           AverageHealth(series), alerts.size());
  return kExitOk;
}

// Streams health lines (`health,t,p_total,health,n_vitals`) and alert lines
// (`alert,t_start,t,min_health`) to stdout, one tick behind the input at
// most. Bad records are reported on stderr and skipped.
int Monitor(std::istream& in, const EngineConfig& cfg) {
  RobotParams params = cfg.ApplyRobot(RobotParams{});
  try {
    params.Validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  std::string bad_header;
  double range_max = kDefaultRangeMax;
  std::optional<VitalsEngine> engine;
  HealthTracker tracker(cfg.health);
  AlertDetector alerts(cfg.health);
  Resampler resampler;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      LogRecord rec = ParseRecord(line, line_no, range_max);
      if (rec.header) {
        if (engine) throw InputError("line " + std::to_string(line_no) + ": header after frames");
        params = cfg.ApplyRobot(*rec.header);
        if (rec.header_range_max) range_max = *rec.header_range_max;
        try {
          params.Validate();
        } catch (const std::invalid_argument& e) {
          bad_header = "line " + std::to_string(line_no) + ": " + e.what();
          break;
        }
        continue;
      }
      if (!engine) engine.emplace(params, cfg.vitals);
      std::vector<TelemetryFrame> ticks;
      try {
        ticks = resampler.Push(*rec.frame);
      } catch (const InputError& e) {
        throw InputError("line " + std::to_string(line_no) + ": " + e.what());
      }
      for (const auto& tick : ticks) {
        const VitalSet readings = engine->Update(tick);
        const HealthSample s = tracker.Update(tick.t, readings);
        std::cout << fmt::format("health,{},{},{},{}\n", s.t, s.p_total, s.health, s.n_vitals);
        if (auto a = alerts.Update(s)) {
          std::cout << fmt::format("alert,{},{},{}\n", a->t_start, a->t_end, a->min_health);
        }
      }
      std::cout.flush();
    } catch (const InputError& e) {
      std::cerr << "warning: " << e.what() << " (skipped)\n";
    }
  }
  // A valid header that the overrides make invalid.
  if (!bad_header.empty()) throw InputError(bad_header);
  return kExitOk;
}

std::vector<int> ParseLevels(const std::string& text) {
  std::vector<int> levels;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      if (auto dash = item.find('-'); dash != std::string::npos && dash > 0) {
        const int lo = std::stoi(item.substr(0, dash));
        const int hi = std::stoi(item.substr(dash + 1));
        for (int l = lo; l <= hi; ++l) levels.push_back(l);
      } else {
        levels.push_back(std::stoi(item));
      }
    } catch (const std::exception&) {
      throw InputError("bad --levels entry '" + item + "'");
    }
  }
  if (levels.empty()) throw InputError("--levels is empty");
  for (int l : levels) DescribeLevel(l);
  return levels;
}

int Experiment(const std::string& levels_text, int trials, std::uint64_t seed,
               unsigned threads, const fs::path& out_dir, const EngineConfig& cfg) {
  if (trials < 1) throw InputError("--trials must be >= 1");
  const std::vector<int> levels = ParseLevels(levels_text);
  const std::vector<TrialSummary> summaries =
      RunMatrix(levels, trials, seed, cfg.vitals, cfg.health, threads);

  EnsureDir(out_dir);
  auto summary_out = OpenOutput(out_dir, "summary.csv");
  WriteSummaryCsv(summary_out, summaries);

  auto report_out = OpenOutput(out_dir, "correlation.txt");
  try {
    const CorrelationResult r = CorrelateHealthTcomp(summaries);
    WriteCorrelationReport(report_out, &r, "", summaries);
    std::cout << fmt::format("rho={:.6f} p_value={:.6f} n={}\n", r.rho, r.p_value, r.n);
  } catch (const InsufficientDataError& e) {
    WriteCorrelationReport(report_out, nullptr, e.what(), summaries);
    std::cerr << "error: " << e.what() << '\n';
    return kExitInsufficient;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robot vitals and health: simulate, replay, monitor, experiment"};
  app.require_subcommand(1);

  CommonOptions sim_opts, replay_opts, monitor_opts, exp_opts;

  auto* simulate = app.add_subcommand("simulate", "Run one simulated trial");
  std::string scenario_path;
  std::optional<std::uint64_t> sim_seed;
  std::string sim_out = "out";
  simulate->add_option("--scenario", scenario_path, "Scenario file")->required();
  simulate->add_option("--seed", sim_seed, "Override the scenario seed");
  simulate->add_option("--out", sim_out, "Output directory");
  AddCommon(simulate, sim_opts);

  auto* replay = app.add_subcommand("replay", "Compute vitals, health and alerts for a log");
  std::string log_path;
  std::string replay_out = "out";
  replay->add_option("--log", log_path, "Telemetry JSONL log")->required();
  replay->add_option("--out", replay_out, "Output directory");
  AddCommon(replay, replay_opts);

  auto* monitor = app.add_subcommand("monitor", "Stream health from frames on stdin");
  std::string monitor_log;
  monitor->add_option("--log", monitor_log, "Read frames from a file instead of stdin");
  AddCommon(monitor, monitor_opts);

  auto* experiment = app.add_subcommand("experiment", "Run the degradation-level matrix");
  std::string levels_text = "0-7";
  int trials = 10;
  std::uint64_t exp_seed = 1;
  unsigned threads = 0;
  std::string exp_out = "out";
  experiment->add_option("--levels", levels_text, "Levels, e.g. 0-7 or 0,2,5");
  experiment->add_option("--trials", trials, "Trials per level");
  experiment->add_option("--seed", exp_seed, "Base seed");
  experiment->add_option("--threads", threads, "Worker threads (0 = all cores)");
  experiment->add_option("--out", exp_out, "Output directory");
  AddCommon(experiment, exp_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*simulate) return Simulate(scenario_path, sim_seed, sim_out, sim_opts.Build());
    if (*replay) return Replay(log_path, replay_out, replay_opts.Build());
    if (*monitor) {
      const EngineConfig cfg = monitor_opts.Build();
      if (monitor_log.empty()) return Monitor(std::cin, cfg);
      std::ifstream in(monitor_log);
      if (!in) throw InputError("cannot open log " + monitor_log);
      return Monitor(in, cfg);
    }
    if (*experiment) {
      return Experiment(levels_text, trials, exp_seed, threads, exp_out, exp_opts.Build());
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InsufficientDataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInsufficient;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

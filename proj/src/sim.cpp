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

#include "robovitals/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "robovitals/errors.hpp"

namespace robovitals {

namespace {

constexpr std::uint64_t kPlacementStream = 3;
constexpr double kRoughJerkAmplitude = 1.2;
constexpr int kRoughEpisodesPerUnitFraction = 10;
constexpr int kRoughMinDuration = 2;
constexpr int kRoughMaxDuration = 6;
constexpr int kRoughWindowStart = 3;
constexpr int kRoughWindowEnd = 35;
constexpr double kNoiseBurstStart = 7.0;
constexpr double kNoiseBurstDuration = 7.0;

constexpr std::array<LevelSpec, kLevelCount> kLevels = {{
    {0.0, 0.0},
    {2.5, 0.0},
    {4.5, 0.0},
    {2.5, 0.1},
    {4.5, 0.1},
    {2.5, 0.2},
    {4.5, 0.2},
    {4.5, 0.4},
}};

// Per-axis std that gives an RMS 2D error of kPoseJitterStd.
const double kJitterAxisStd = kPoseJitterStd / std::numbers::sqrt2;

void UpdateJitter(SimState& s) {
  const double rho = kPoseJitterCorrelation;
  const double innovation = std::sqrt(1.0 - rho * rho) * kJitterAxisStd;
  s.jitter_x = rho * s.jitter_x + innovation * s.jitter_rng.Normal();
  s.jitter_y = rho * s.jitter_y + innovation * s.jitter_rng.Normal();
}

// Fills the sensor side of the state at its current time and emits the frame.
TelemetryFrame Observe(SimState& s, const ScenarioConfig& scenario) {
  s.fused_pose = s.true_pose;
  s.fused_pose.x += s.jitter_x;
  s.fused_pose.y += s.jitter_y;

  s.accel_z = 0.0;
  double noise_scale = 0.0;
  for (const auto& inj : scenario.injectors) {
    if (!inj.ActiveAt(s.t)) continue;
    if (inj.kind == InjectorKind::kJerkPulse) s.accel_z += inj.intensity;
    if (inj.kind == InjectorKind::kNoiseBurst) {
      noise_scale = std::max(noise_scale, inj.intensity);
    }
  }

  TelemetryFrame f;
  f.t = s.t;
  f.fused_pose = s.fused_pose;
  f.raw_odom_pose = s.raw_odom_pose;
  f.accel_z = s.accel_z;
  f.goal = scenario.goal;
  f.scan.range_max = kScanRangeMax;
  f.scan.ranges.assign(kScanBeams, kScanRange);
  if (noise_scale > 0.0) {
    const double std_dev = kScanNoiseStd * noise_scale;
    for (double& r : f.scan.ranges) r += std_dev * s.scan_rng.Normal();
  }
  return f;
}

double ParseNumber(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw InputError("scenario key '" + key + "': not a number: '" + value + "'");
  }
  if (used != value.size() || !std::isfinite(v)) {
    throw InputError("scenario key '" + key + "': not a number: '" + value + "'");
  }
  return v;
}

std::uint64_t ParseUnsigned(const std::string& key, const std::string& value) {
  if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) {
    throw InputError("scenario key '" + key + "': not a non-negative integer: '" +
                     value + "'");
  }
  try {
    return std::stoull(value);
  } catch (const std::exception&) {
    throw InputError("scenario key '" + key + "': out of range");
  }
}

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::string_view InjectorKindName(InjectorKind kind) {
  switch (kind) {
    case InjectorKind::kNoiseBurst:
      return "NoiseBurst";
    case InjectorKind::kStuckEpisode:
      return "StuckEpisode";
    case InjectorKind::kSlipEpisode:
      return "SlipEpisode";
    case InjectorKind::kJerkPulse:
      return "JerkPulse";
    case InjectorKind::kHighFrictionZone:
      return "HighFrictionZone";
  }
  return "unknown";
}

InjectorKind ParseInjectorKind(std::string_view name) {
  for (auto kind : {InjectorKind::kNoiseBurst, InjectorKind::kStuckEpisode,
                    InjectorKind::kSlipEpisode, InjectorKind::kJerkPulse,
                    InjectorKind::kHighFrictionZone}) {
    if (InjectorKindName(kind) == name) return kind;
  }
  throw InputError("unknown injector kind '" + std::string(name) + "'");
}

void ScenarioConfig::Validate() const {
  for (double v : {start.x, start.y, start.heading, goal.x, goal.y}) {
    if (!std::isfinite(v)) throw InputError("scenario poses must be finite");
  }
  if (start.x == goal.x && start.y == goal.y) {
    throw InputError("scenario start and goal coincide");
  }
  if (!(max_duration > 0.0)) throw InputError("max_duration must be positive");
  try {
    params.Validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  for (std::size_t i = 0; i < injectors.size(); ++i) {
    const auto& inj = injectors[i];
    if (!(inj.duration > 0.0)) {
      throw InputError("injector." + std::to_string(i) + ".duration must be positive");
    }
    if (!(inj.intensity >= 0.0)) {
      throw InputError("injector." + std::to_string(i) + ".intensity must be >= 0");
    }
  }
}

std::pair<SimState, TelemetryFrame> InitialState(const ScenarioConfig& scenario) {
  SimState s;
  s.true_pose = scenario.start;
  s.true_pose.heading = NormalizeAngle(scenario.start.heading);
  s.raw_odom_pose = s.true_pose;
  s.jitter_rng = Rng(scenario.seed, 1);
  s.scan_rng = Rng(scenario.seed, 2);
  // Start from the stationary distribution of the jitter process.
  s.jitter_x = kJitterAxisStd * s.jitter_rng.Normal();
  s.jitter_y = kJitterAxisStd * s.jitter_rng.Normal();
  TelemetryFrame f = Observe(s, scenario);
  return {std::move(s), std::move(f)};
}

std::pair<SimState, TelemetryFrame> Step(const SimState& state,
                                         const ScenarioConfig& scenario) {
  if (state.t >= scenario.max_duration) throw std::logic_error("trial exhausted");
  SimState s = state;

  bool stuck = false;
  bool slipping = false;
  double slip_rate = 0.0;
  double friction = 1.0;
  for (const auto& inj : scenario.injectors) {
    if (!inj.ActiveAt(s.t)) continue;
    switch (inj.kind) {
      case InjectorKind::kStuckEpisode:
        stuck = true;
        break;
      case InjectorKind::kSlipEpisode:
        slipping = true;
        slip_rate = std::max(slip_rate, inj.intensity);
        break;
      case InjectorKind::kHighFrictionZone:
        friction *= inj.intensity;
        break;
      default:
        break;
    }
  }

  const double dx = scenario.goal.x - s.true_pose.x;
  const double dy = scenario.goal.y - s.true_pose.y;
  const double remaining = std::hypot(dx, dy);
  if (remaining > 0.0) {
    const double turn = std::clamp(NormalizeAngle(std::atan2(dy, dx) - s.true_pose.heading),
                                   -kMaxTurnRate, kMaxTurnRate);
    s.true_pose.heading = NormalizeAngle(s.true_pose.heading + turn);
  }
  const double c = std::cos(s.true_pose.heading);
  const double sn = std::sin(s.true_pose.heading);

  const double speed = scenario.params.v_nominal * friction;
  const double advance = (stuck || slipping) ? 0.0 : std::min(speed, remaining);
  s.true_pose.x += advance * c;
  s.true_pose.y += advance * sn;

  // Wheel odometry integrates what the wheels did, including spin in place.
  const double odom_advance = (slipping && !stuck) ? slip_rate : advance;
  s.raw_odom_pose.x += odom_advance * c;
  s.raw_odom_pose.y += odom_advance * sn;
  s.raw_odom_pose.heading = s.true_pose.heading;

  s.t += 1.0;

  if (advance < scenario.params.v_trivial) {
    ++s.stall_clock;
    if (s.stall_clock == kGoalResetAfter && !s.reset_used) {
      ++s.goal_resets;
      s.reset_used = true;
      s.stall_clock = 0;
    }
  } else {
    s.stall_clock = 0;
    s.reset_used = false;
  }

  UpdateJitter(s);
  TelemetryFrame f = Observe(s, scenario);
  return {std::move(s), std::move(f)};
}

TrialResult RunTrial(const ScenarioConfig& scenario, const VitalConfig& vital_cfg,
                     const HealthConfig& health_cfg) {
  scenario.Validate();
  VitalsEngine vitals(scenario.params, vital_cfg);
  HealthTracker health(health_cfg);

  TrialResult result;
  result.log.params = scenario.params;
  result.log.range_max = kScanRangeMax;

  auto consume = [&](TelemetryFrame frame) {
    const VitalSet readings = vitals.Update(frame);
    result.health_series.push_back(health.Update(frame.t, readings));
    result.log.frames.push_back(std::move(frame));
  };

  auto [state, frame] = InitialState(scenario);
  consume(std::move(frame));
  while (true) {
    if (DistanceToGoal(state.true_pose, scenario.goal) <= kGoalTolerance) {
      result.completed = true;
      break;
    }
    if (state.stall_clock >= kStallLimit || state.t >= scenario.max_duration) break;
    auto [next, next_frame] = Step(state, scenario);
    state = std::move(next);
    consume(std::move(next_frame));
  }

  result.t_comp = state.t;
  result.goal_resets = state.goal_resets;
  result.avg_health = AverageHealth(result.health_series);
  result.alerts = DetectAlerts(result.health_series, health_cfg);
  return result;
}

LevelSpec DescribeLevel(int level) {
  if (level < 0 || level >= kLevelCount) {
    throw InputError("unknown degradation level " + std::to_string(level));
  }
  return kLevels[static_cast<std::size_t>(level)];
}

ScenarioConfig BuildLevel(int level, std::uint64_t seed) {
  const LevelSpec spec = DescribeLevel(level);
  ScenarioConfig s;
  s.start = {0.0, 0.0, 0.0};
  s.goal = {20.0, 0.0, 0.0};
  s.seed = seed;

  if (spec.noise_scale > 0.0) {
    s.injectors.push_back(
        {InjectorKind::kNoiseBurst, kNoiseBurstStart, kNoiseBurstDuration, spec.noise_scale});
  }

  // Rough terrain: short stuck episodes, each opening with a jerk. Placement
  // depends only on (seed, fraction), so levels that share a terrain fraction
  // share the terrain.
  const int episodes =
      static_cast<int>(std::lround(spec.rough_fraction * kRoughEpisodesPerUnitFraction));
  Rng placement(seed, kPlacementStream);
  std::vector<std::pair<int, int>> placed;  // (start, duration)
  while (static_cast<int>(placed.size()) < episodes) {
    const int duration =
        kRoughMinDuration + static_cast<int>(placement.Below(kRoughMaxDuration - kRoughMinDuration + 1));
    const int latest = kRoughWindowEnd - duration;
    const int start =
        kRoughWindowStart + static_cast<int>(placement.Below(latest - kRoughWindowStart + 1));
    const bool clashes = std::any_of(placed.begin(), placed.end(), [&](const auto& p) {
      return start < p.first + p.second + 1 && p.first < start + duration + 1;
    });
    if (!clashes) placed.emplace_back(start, duration);
  }
  std::sort(placed.begin(), placed.end());
  for (const auto& [start, duration] : placed) {
    s.injectors.push_back({InjectorKind::kStuckEpisode, static_cast<double>(start),
                           static_cast<double>(duration), 0.0});
    s.injectors.push_back(
        {InjectorKind::kJerkPulse, static_cast<double>(start), 1.0, kRoughJerkAmplitude});
  }
  return s;
}

ScenarioConfig ParseScenario(std::istream& in, std::optional<std::uint64_t> seed_override) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InputError("scenario line " + std::to_string(line_no) + ": expected key = value");
    }
    entries.emplace_back(Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)));
  }

  ScenarioConfig s;
  std::optional<int> level;
  for (const auto& [key, value] : entries) {
    if (key == "seed") {
      s.seed = ParseUnsigned(key, value);
    } else if (key == "level") {
      level = static_cast<int>(ParseUnsigned(key, value));
    }
  }
  if (seed_override) s.seed = *seed_override;
  if (level) {
    try {
      s = BuildLevel(*level, s.seed);
    } catch (const InputError& e) {
      throw InputError("scenario key 'level': " + std::string(e.what()));
    }
  }

  std::vector<Injector> extra;
  std::vector<std::array<bool, 4>> extra_seen;
  for (const auto& [key, value] : entries) {
    if (key == "seed" || key == "level") continue;
    if (key == "max_duration") {
      s.max_duration = ParseNumber(key, value);
    } else if (key == "start.x") {
      s.start.x = ParseNumber(key, value);
    } else if (key == "start.y") {
      s.start.y = ParseNumber(key, value);
    } else if (key == "start.heading") {
      s.start.heading = ParseNumber(key, value);
    } else if (key == "goal.x") {
      s.goal.x = ParseNumber(key, value);
    } else if (key == "goal.y") {
      s.goal.y = ParseNumber(key, value);
    } else if (key == "goal.heading") {
      s.goal.heading = ParseNumber(key, value);
    } else if (key == "params.v_nominal") {
      s.params.v_nominal = ParseNumber(key, value);
    } else if (key == "params.v_max") {
      s.params.v_max = ParseNumber(key, value);
    } else if (key == "params.v_trivial") {
      s.params.v_trivial = ParseNumber(key, value);
    } else if (key == "params.sample_rate") {
      s.params.sample_rate = ParseNumber(key, value);
    } else if (key.starts_with("injector.")) {
      const auto dot = key.find('.', 9);
      if (dot == std::string::npos) throw InputError("unknown scenario key '" + key + "'");
      const std::string index_text = key.substr(9, dot - 9);
      const std::size_t index = ParseUnsigned(key, index_text);
      if (index > 1000) throw InputError("scenario key '" + key + "': index too large");
      if (extra.size() <= index) {
        extra.resize(index + 1);
        extra_seen.resize(index + 1, {false, false, false, false});
      }
      const std::string field = key.substr(dot + 1);
      Injector& inj = extra[index];
      auto& seen = extra_seen[index];
      if (field == "kind") {
        try {
          inj.kind = ParseInjectorKind(value);
        } catch (const InputError& e) {
          throw InputError("scenario key '" + key + "': " + e.what());
        }
        seen[0] = true;
      } else if (field == "t_start") {
        inj.t_start = ParseNumber(key, value);
        seen[1] = true;
      } else if (field == "duration") {
        inj.duration = ParseNumber(key, value);
        seen[2] = true;
      } else if (field == "intensity") {
        inj.intensity = ParseNumber(key, value);
        seen[3] = true;
      } else {
        throw InputError("unknown scenario key '" + key + "'");
      }
    } else {
      throw InputError("unknown scenario key '" + key + "'");
    }
  }

  static constexpr std::array<const char*, 4> kFields = {"kind", "t_start", "duration",
                                                         "intensity"};
  for (std::size_t i = 0; i < extra.size(); ++i) {
    for (std::size_t f = 0; f < kFields.size(); ++f) {
      if (!extra_seen[i][f]) {
        throw InputError("missing scenario key 'injector." + std::to_string(i) + "." +
                         kFields[f] + "'");
      }
    }
    s.injectors.push_back(extra[i]);
  }
  s.Validate();
  return s;
}

void WriteScenario(std::ostream& out, const ScenarioConfig& s) {
  out << fmt::format("seed = {}\n", s.seed);
  out << fmt::format("max_duration = {}\n", s.max_duration);
  out << fmt::format("start.x = {}\nstart.y = {}\nstart.heading = {}\n", s.start.x, s.start.y,
                     s.start.heading);
  out << fmt::format("goal.x = {}\ngoal.y = {}\ngoal.heading = {}\n", s.goal.x, s.goal.y,
                     s.goal.heading);
  out << fmt::format("params.v_nominal = {}\nparams.v_max = {}\nparams.v_trivial = {}\n",
                     s.params.v_nominal, s.params.v_max, s.params.v_trivial);
  out << fmt::format("params.sample_rate = {}\n", s.params.sample_rate);
  for (std::size_t i = 0; i < s.injectors.size(); ++i) {
    const auto& inj = s.injectors[i];
    out << fmt::format("injector.{0}.kind = {1}\ninjector.{0}.t_start = {2}\n"
                       "injector.{0}.duration = {3}\ninjector.{0}.intensity = {4}\n",
                       i, InjectorKindName(inj.kind), inj.t_start, inj.duration,
                       inj.intensity);
  }
}

void WriteTrialCsv(std::ostream& out, const TrialResult& r) {
  out << "completed,T_comp,avg_health,goal_resets,alerts\n";
  out << fmt::format("{},{},{},{},{}\n", r.completed ? "true" : "false", r.t_comp,
                     r.avg_health, r.goal_resets, r.alerts.size());
}

}  // namespace robovitals

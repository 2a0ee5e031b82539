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

// 1 Hz unicycle simulator with degradation injectors.
//
// The robot turns toward the goal (at most kMaxTurnRate per tick) and then
// drives forward. Injectors are active on ticks t_start <= t < t_start +
// duration and act on the motion from t to t + 1, or on the frame observed
// at t:
//
//   NoiseBurst        scan noise std = kScanNoiseStd * intensity
//   StuckEpisode      no motion, wheels included
//   SlipEpisode       true pose held, raw odometry advances at intensity m/s
//   JerkPulse         accel_z = intensity
//   HighFrictionZone  speed scaled by intensity
//
// A trial ends when the robot is within kGoalTolerance of the goal, when it
// has been stalled for kStallLimit seconds (one goal reset after
// kGoalResetAfter stalled seconds restarts the clock once per stall), or at
// max_duration.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "robovitals/health.hpp"
#include "robovitals/random.hpp"
#include "robovitals/telemetry.hpp"
#include "robovitals/vitals.hpp"

namespace robovitals {

inline constexpr double kGoalTolerance = 0.3;
inline constexpr int kStallLimit = 30;
inline constexpr int kGoalResetAfter = 10;
inline constexpr double kMaxTurnRate = 1.0;       // rad per tick
inline constexpr double kPoseJitterStd = 0.005;   // RMS fused-pose error, m
inline constexpr double kPoseJitterCorrelation = 0.9;
inline constexpr std::size_t kScanBeams = 360;
inline constexpr double kScanRange = 5.0;
inline constexpr double kScanRangeMax = 10.0;
inline constexpr double kScanNoiseStd = 0.2;
inline constexpr int kLevelCount = 8;

enum class InjectorKind {
  kNoiseBurst,
  kStuckEpisode,
  kSlipEpisode,
  kJerkPulse,
  kHighFrictionZone,
};

std::string_view InjectorKindName(InjectorKind kind);
/// Throws InputError for unknown names.
InjectorKind ParseInjectorKind(std::string_view name);

struct Injector {
  InjectorKind kind = InjectorKind::kNoiseBurst;
  double t_start = 0.0;
  double duration = 0.0;
  double intensity = 0.0;

  bool ActiveAt(double t) const { return t >= t_start && t < t_start + duration; }
  bool operator==(const Injector&) const = default;
};

struct ScenarioConfig {
  Pose2D start;
  Pose2D goal{20.0, 0.0, 0.0};
  RobotParams params;
  std::uint64_t seed = 0;
  double max_duration = 300.0;
  std::vector<Injector> injectors;

  /// Throws InputError on a violated invariant.
  void Validate() const;
};

struct SimState {
  Pose2D true_pose;
  Pose2D fused_pose;
  Pose2D raw_odom_pose;
  double accel_z = 0.0;
  double t = 0.0;
  Rng jitter_rng{0, 1};
  Rng scan_rng{0, 2};
  double jitter_x = 0.0;
  double jitter_y = 0.0;
  int goal_resets = 0;
  int stall_clock = 0;
  bool reset_used = false;
};

struct TrialResult {
  bool completed = false;
  double t_comp = 0.0;
  double avg_health = 0.0;
  int goal_resets = 0;
  std::vector<HealthSample> health_series;
  std::vector<AlertEvent> alerts;
  TelemetryLog log;
};

/// State at t = 0 and the frame observed there.
std::pair<SimState, TelemetryFrame> InitialState(const ScenarioConfig& scenario);

/// Advances one tick. Throws std::logic_error("trial exhausted") once
/// state.t >= max_duration.
std::pair<SimState, TelemetryFrame> Step(const SimState& state,
                                         const ScenarioConfig& scenario);

TrialResult RunTrial(const ScenarioConfig& scenario, const VitalConfig& vital_cfg,
                     const HealthConfig& health_cfg);

/// Degradation level description: laser noise scale (0 = none) crossed with a
/// rough-terrain fraction.
struct LevelSpec {
  double noise_scale = 0.0;
  double rough_fraction = 0.0;
};

/// Throws InputError for levels outside [0, kLevelCount).
LevelSpec DescribeLevel(int level);

/// Deterministic scenario for a degradation level. Level 0 has no injectors.
ScenarioConfig BuildLevel(int level, std::uint64_t seed);

/// Flat key = value scenario files; see scenarios/ for examples. A `level`
/// key expands to BuildLevel(level, seed) before explicit injectors are
/// appended. `seed_override` replaces the file's seed before the level is
/// expanded. Throws InputError naming the offending key.
ScenarioConfig ParseScenario(std::istream& in,
                             std::optional<std::uint64_t> seed_override = std::nullopt);
void WriteScenario(std::ostream& out, const ScenarioConfig& scenario);

/// CSV: completed,T_comp,avg_health,goal_resets,alerts
void WriteTrialCsv(std::ostream& out, const TrialResult& result);

}  // namespace robovitals

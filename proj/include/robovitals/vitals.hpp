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

// The five robot vitals and their probability-of-suffering transfer
// functions. Everything here works on 1 Hz telemetry.

#pragma once

#include <array>
#include <cstddef>
#include <deque>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "robovitals/telemetry.hpp"

namespace robovitals {

enum class VitalId {
  kGoalProgress,       // rate of change of distance to goal
  kJerk,               // rate of change of vertical acceleration
  kLocalisationError,  // rate of change of raw-vs-fused disagreement
  kVelocity,           // fused speed
  kLaserNoise,         // scan noise statistic
};

inline constexpr std::size_t kNumVitals = 5;
inline constexpr std::array<VitalId, kNumVitals> kAllVitals = {
    VitalId::kGoalProgress, VitalId::kJerk, VitalId::kLocalisationError,
    VitalId::kVelocity, VitalId::kLaserNoise};

std::string_view VitalName(VitalId id);

struct GoalProgressConfig {
  double a = -6.0;
  double b = -0.15;
  std::size_t window = 5;   // matched-filter template length, samples
  double similarity = 0.3;  // |d_event| above this is (dis)similar
};

struct JerkConfig {
  double sigma1 = 0.4;
  double sigma2 = -0.9;
  double topple = 0.5;
};

struct LocalisationConfig {
  double k = 0.2;
  double saturation = 5.0;  // seconds
  double epsilon = 0.02;    // meters per tick counted as "non-zero"
};

/// Logistic 1 / (1 + exp(-a x + a b)).
struct SigmoidConfig {
  double a = 1.0;
  double b = 0.0;
};

struct VitalConfig {
  GoalProgressConfig goal;
  JerkConfig jerk;
  LocalisationConfig loc;
  SigmoidConfig vel{1.5, 2.5};
  SigmoidConfig noise{5.0, 1.0};

  void Validate() const;
};

struct VitalReading {
  VitalId id = VitalId::kGoalProgress;
  double t = 0.0;
  double raw = 0.0;  // d_event, jerk, t_event or noise score
  double p_suffering = 0.0;
  bool available = false;
};

using VitalSet = std::array<VitalReading, kNumVitals>;

// --- Goal progress ---------------------------------------------------------

double DistanceToGoal(const Pose2D& pose, const Pose2D& goal);

/// Template-normalised correlation of a window of distance-to-goal rates with
/// the ideal approach template (window.size() copies of -v_nominal), clamped
/// to [-1, 1]. Throws std::invalid_argument if the window length is not
/// cfg.goal.window.
double MatchedFilterEvent(std::span<const double> dg_dot_window,
                          const RobotParams& params, const VitalConfig& cfg);

enum class GoalSimilarity { kSimilar, kNeutral, kDissimilar };
GoalSimilarity ClassifyGoalProgress(double d_event, const VitalConfig& cfg);

double PSufferGoalProgress(double d_event, const VitalConfig& cfg);

// --- Jerk ------------------------------------------------------------------

/// Finite difference of smoothed 1 Hz vertical acceleration.
std::vector<double> JerkSignal(std::span<const double> accel_z_1hz);

/// Inverted bell: 1 - exp(-(0.5 / sigma2^2) j^2) / (sqrt(2 pi) sigma1).
double PSufferJerk(double jerk, const VitalConfig& cfg);

bool IsToppleRisk(double jerk, const VitalConfig& cfg);

// --- Localisation ------------------------------------------------------------

/// Distance between the raw odometry and fused position estimates.
double LocalisationError(const Pose2D& raw, const Pose2D& fused);

/// Counts consecutive ticks on which a predicate held.
class EventCounter {
 public:
  int Update(bool flag) {
    seconds_ = flag ? seconds_ + 1 : 0;
    return seconds_;
  }
  int seconds() const { return seconds_; }

 private:
  int seconds_ = 0;
};

/// Run length of trues ending at each index.
std::vector<int> ConsecutiveEventSeconds(const std::vector<bool>& flags);

/// k t on [0, saturation], 1 beyond. Throws std::invalid_argument for t < 0.
double PSufferLocalisation(double t_event, const VitalConfig& cfg);

// --- Velocity --------------------------------------------------------------

/// Speed between consecutive 1 Hz poses. Throws for fewer than two poses.
std::vector<double> SpeedSeries(std::span<const Pose2D> fused_poses);

double PSufferVelocity(double t_event, const VitalConfig& cfg);

// --- Laser noise -------------------------------------------------------------

double PSufferNoise(double score, const VitalConfig& cfg);

// ---------------------------------------------------------------------------

/// Per-stream vitals state. Feed it 1 Hz ticks in order.
///
/// Goal progress is unavailable until `cfg.goal.window` distance rates exist;
/// jerk is unavailable on the first tick and whenever accel_z is missing (once
/// missing, it stays disabled for the stream). Both event counters start at 0.
class VitalsEngine {
 public:
  VitalsEngine(RobotParams params, VitalConfig cfg);

  VitalSet Update(const TelemetryFrame& tick);

  void DisableJerk() { jerk_enabled_ = false; }

 private:
  RobotParams params_;
  VitalConfig cfg_;
  bool jerk_enabled_ = true;
  std::optional<TelemetryFrame> prev_;
  std::deque<double> dg_dot_window_;
  EventCounter loc_counter_;
  EventCounter vel_counter_;
};

/// Runs every vital over a 1 Hz log.
std::vector<VitalSet> ComputeVitals(const TelemetryLog& log, const VitalConfig& cfg);

/// CSV: t,vital_id,raw,p_suffering,available (one line per tick and vital).
void WriteVitalsCsv(std::ostream& out, std::span<const VitalSet> vitals);

}  // namespace robovitals

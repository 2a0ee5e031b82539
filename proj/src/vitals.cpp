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

#include "robovitals/vitals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "robovitals/noise_estimate.hpp"

namespace robovitals {

namespace {

double Sigmoid(double x, double a, double b) {
  return 1.0 / (1.0 + std::exp(-a * x + a * b));
}

double PlanarDistance(const Pose2D& a, const Pose2D& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

bool AllFinite(std::initializer_list<double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace

std::string_view VitalName(VitalId id) {
  switch (id) {
    case VitalId::kGoalProgress:
      return "goal_progress";
    case VitalId::kJerk:
      return "jerk";
    case VitalId::kLocalisationError:
      return "localisation_error";
    case VitalId::kVelocity:
      return "velocity";
    case VitalId::kLaserNoise:
      return "laser_noise";
  }
  return "unknown";
}

void VitalConfig::Validate() const {
  if (!AllFinite({goal.a, goal.b, goal.similarity, jerk.sigma1, jerk.sigma2,
                  jerk.topple, loc.k, loc.saturation, loc.epsilon, vel.a, vel.b,
                  noise.a, noise.b})) {
    throw std::invalid_argument("vital constants must be finite");
  }
  if (goal.window < 2) throw std::invalid_argument("goal window must be >= 2");
  if (!(loc.epsilon > 0.0)) throw std::invalid_argument("loc epsilon must be > 0");
  if (jerk.sigma1 == 0.0 || jerk.sigma2 == 0.0) {
    throw std::invalid_argument("jerk sigmas must be non-zero");
  }
}

double DistanceToGoal(const Pose2D& pose, const Pose2D& goal) {
  return PlanarDistance(pose, goal);
}

double MatchedFilterEvent(std::span<const double> dg_dot_window,
                          const RobotParams& params, const VitalConfig& cfg) {
  if (dg_dot_window.size() != cfg.goal.window) {
    throw std::invalid_argument("matched filter window must have " +
                                std::to_string(cfg.goal.window) + " samples");
  }
  const double h = -params.v_nominal;
  double corr = 0.0;
  for (double x : dg_dot_window) corr += x * h;
  const double energy = static_cast<double>(dg_dot_window.size()) * h * h;
  return std::clamp(corr / energy, -1.0, 1.0);
}

GoalSimilarity ClassifyGoalProgress(double d_event, const VitalConfig& cfg) {
  if (d_event > cfg.goal.similarity) return GoalSimilarity::kSimilar;
  if (d_event < -cfg.goal.similarity) return GoalSimilarity::kDissimilar;
  return GoalSimilarity::kNeutral;
}

double PSufferGoalProgress(double d_event, const VitalConfig& cfg) {
  return Sigmoid(d_event, cfg.goal.a, cfg.goal.b);
}

std::vector<double> JerkSignal(std::span<const double> accel_z_1hz) {
  return FiniteDifference(accel_z_1hz, 1.0);
}

double PSufferJerk(double jerk, const VitalConfig& cfg) {
  const double s1 = cfg.jerk.sigma1;
  const double s2 = cfg.jerk.sigma2;
  const double bell = std::exp(-(0.5 / (s2 * s2)) * jerk * jerk) /
                      (std::sqrt(2.0 * std::numbers::pi) * std::abs(s1));
  // A small sigma1 pushes the peak above 1; keep the output a probability.
  return std::clamp(1.0 - bell, 0.0, 1.0);
}

bool IsToppleRisk(double jerk, const VitalConfig& cfg) {
  return std::abs(jerk) >= cfg.jerk.topple;
}

double LocalisationError(const Pose2D& raw, const Pose2D& fused) {
  return PlanarDistance(raw, fused);
}

std::vector<int> ConsecutiveEventSeconds(const std::vector<bool>& flags) {
  std::vector<int> out;
  out.reserve(flags.size());
  EventCounter counter;
  for (bool f : flags) out.push_back(counter.Update(f));
  return out;
}

double PSufferLocalisation(double t_event, const VitalConfig& cfg) {
  if (t_event < 0.0) throw std::invalid_argument("t_event must be >= 0");
  if (t_event >= cfg.loc.saturation) return 1.0;
  return std::clamp(cfg.loc.k * t_event, 0.0, 1.0);
}

std::vector<double> SpeedSeries(std::span<const Pose2D> fused_poses) {
  if (fused_poses.size() < 2) throw std::invalid_argument("need two samples");
  std::vector<double> out(fused_poses.size() - 1);
  for (std::size_t i = 0; i + 1 < fused_poses.size(); ++i) {
    out[i] = PlanarDistance(fused_poses[i], fused_poses[i + 1]);
  }
  return out;
}

double PSufferVelocity(double t_event, const VitalConfig& cfg) {
  return Sigmoid(t_event, cfg.vel.a, cfg.vel.b);
}

double PSufferNoise(double score, const VitalConfig& cfg) {
  return Sigmoid(score, cfg.noise.a, cfg.noise.b);
}

VitalsEngine::VitalsEngine(RobotParams params, VitalConfig cfg)
    : params_(params), cfg_(cfg) {
  params_.Validate();
  cfg_.Validate();
}

VitalSet VitalsEngine::Update(const TelemetryFrame& tick) {
  VitalSet out;
  for (std::size_t i = 0; i < kNumVitals; ++i) {
    out[i].id = kAllVitals[i];
    out[i].t = tick.t;
  }
  auto& goal = out[static_cast<std::size_t>(VitalId::kGoalProgress)];
  auto& jerk = out[static_cast<std::size_t>(VitalId::kJerk)];
  auto& loc = out[static_cast<std::size_t>(VitalId::kLocalisationError)];
  auto& vel = out[static_cast<std::size_t>(VitalId::kVelocity)];
  auto& noise = out[static_cast<std::size_t>(VitalId::kLaserNoise)];

  if (!tick.accel_z) jerk_enabled_ = false;

  bool loc_flag = false;
  bool vel_flag = false;
  if (prev_) {
    const double dt = tick.t - prev_->t;
    const double dg_dot = (DistanceToGoal(tick.fused_pose, tick.goal) -
                           DistanceToGoal(prev_->fused_pose, prev_->goal)) / dt;
    dg_dot_window_.push_back(dg_dot);
    if (dg_dot_window_.size() > cfg_.goal.window) dg_dot_window_.pop_front();

    if (jerk_enabled_) {
      jerk.raw = (*tick.accel_z - *prev_->accel_z) / dt;
      jerk.p_suffering = PSufferJerk(jerk.raw, cfg_);
      jerk.available = true;
    }

    const double loc_rate =
        (LocalisationError(tick.raw_odom_pose, tick.fused_pose) -
         LocalisationError(prev_->raw_odom_pose, prev_->fused_pose)) / dt;
    loc_flag = std::abs(loc_rate) > cfg_.loc.epsilon;

    const double speed = PlanarDistance(prev_->fused_pose, tick.fused_pose) / dt;
    vel_flag = speed <= params_.v_trivial || speed >= params_.v_max;
  }

  if (dg_dot_window_.size() == cfg_.goal.window) {
    const std::vector<double> window(dg_dot_window_.begin(), dg_dot_window_.end());
    goal.raw = MatchedFilterEvent(window, params_, cfg_);
    goal.p_suffering = PSufferGoalProgress(goal.raw, cfg_);
    goal.available = true;
  }

  loc.raw = loc_counter_.Update(loc_flag);
  loc.p_suffering = PSufferLocalisation(loc.raw, cfg_);
  loc.available = true;

  vel.raw = vel_counter_.Update(vel_flag);
  vel.p_suffering = PSufferVelocity(vel.raw, cfg_);
  vel.available = true;

  noise.raw = NoiseVariance(ScanToSquareImage(tick.scan));
  noise.p_suffering = PSufferNoise(noise.raw, cfg_);
  noise.available = true;

  prev_ = tick;
  return out;
}

std::vector<VitalSet> ComputeVitals(const TelemetryLog& log, const VitalConfig& cfg) {
  VitalsEngine engine(log.params, cfg);
  if (!log.HasAccel()) engine.DisableJerk();
  std::vector<VitalSet> out;
  out.reserve(log.frames.size());
  for (const auto& f : log.frames) out.push_back(engine.Update(f));
  return out;
}

void WriteVitalsCsv(std::ostream& out, std::span<const VitalSet> vitals) {
  out << "t,vital_id,raw,p_suffering,available\n";
  for (const auto& set : vitals) {
    for (const auto& r : set) {
      out << fmt::format("{},{},{},{},{}\n", r.t, VitalName(r.id), r.raw,
                         r.p_suffering, r.available ? 1 : 0);
    }
  }
}

}  // namespace robovitals

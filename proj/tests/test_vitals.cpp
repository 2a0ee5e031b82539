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

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "robovitals/vitals.hpp"

using namespace robovitals;

namespace {

const VitalConfig kCfg;
const RobotParams kParams;

// Values evaluated independently (Python, double precision) from the transfer
// function definitions with default parameters.
constexpr double kGoalAtMinus1 = 0.9939401985084158;
constexpr double kGoalAt0 = 0.28905049737499605;
constexpr double kGoalAt1 = 0.001006770820085637;
constexpr double kJerkAt0 = 0.0026442989964182706;
constexpr double kJerkAtHalf = 0.14526926458467693;
constexpr double kJerkAt2 = 0.9155658724118234;
constexpr double kVelAt0 = 0.022977369910025615;
constexpr double kNoiseAt07 = 0.18242552380635635;
constexpr double kNoiseAt14 = 0.8807970779778823;

TelemetryFrame Tick(double t, double x, double raw_x, std::optional<double> az,
                    double noise_amp = 0.0) {
  TelemetryFrame f;
  f.t = t;
  f.fused_pose = {x, 0.0, 0.0};
  f.raw_odom_pose = {raw_x, 0.0, 0.0};
  f.accel_z = az;
  f.goal = {20.0, 0.0, 0.0};
  f.scan.range_max = 10.0;
  for (int i = 0; i < 36; ++i) f.scan.ranges.push_back(5.0 + ((i % 2) ? noise_amp : -noise_amp));
  return f;
}

}  // namespace

TEST_CASE("goal progress transfer points") {
  CHECK(std::abs(PSufferGoalProgress(-0.15, kCfg) - 0.5) < 1e-12);
  CHECK(std::abs(PSufferGoalProgress(-1.0, kCfg) - kGoalAtMinus1) < 1e-12);
  CHECK(std::abs(PSufferGoalProgress(0.0, kCfg) - kGoalAt0) < 1e-12);
  CHECK(std::abs(PSufferGoalProgress(1.0, kCfg) - kGoalAt1) < 1e-12);
  for (double x : {-1.0, -0.5, 0.0, 0.3, 1.0}) {
    CHECK(std::abs(PSufferGoalProgress(x, kCfg) - oracle::Logistic(x, -6.0, -0.15)) < 1e-12);
  }
}

TEST_CASE("jerk transfer points") {
  CHECK(std::abs(PSufferJerk(0.0, kCfg) - kJerkAt0) < 1e-12);
  CHECK(std::abs(PSufferJerk(0.5, kCfg) - kJerkAtHalf) < 1e-12);
  CHECK(std::abs(PSufferJerk(-0.5, kCfg) - kJerkAtHalf) < 1e-12);
  CHECK(std::abs(PSufferJerk(2.0, kCfg) - kJerkAt2) < 1e-12);
  for (double j : {-3.0, -0.2, 0.0, 0.7, 1.5}) {
    CHECK(std::abs(PSufferJerk(j, kCfg) - oracle::InvertedBell(j, 0.4, -0.9)) < 1e-12);
  }
  CHECK(IsToppleRisk(0.5, kCfg));
  CHECK(IsToppleRisk(-0.6, kCfg));
  CHECK_FALSE(IsToppleRisk(0.49, kCfg));
}

TEST_CASE("localisation, velocity and noise transfer points") {
  CHECK(std::abs(PSufferLocalisation(3.0, kCfg) - 0.6) < 1e-12);
  CHECK(PSufferLocalisation(5.0, kCfg) == 1.0);
  CHECK(PSufferLocalisation(17.0, kCfg) == 1.0);
  CHECK(PSufferLocalisation(0.0, kCfg) == 0.0);
  CHECK_THROWS_AS(PSufferLocalisation(-1.0, kCfg), std::invalid_argument);

  CHECK(std::abs(PSufferVelocity(2.5, kCfg) - 0.5) < 1e-12);
  CHECK(std::abs(PSufferVelocity(0.0, kCfg) - kVelAt0) < 1e-12);
  CHECK(std::abs(PSufferNoise(1.0, kCfg) - 0.5) < 1e-12);
  CHECK(std::abs(PSufferNoise(0.7, kCfg) - kNoiseAt07) < 1e-12);
  CHECK(std::abs(PSufferNoise(1.4, kCfg) - kNoiseAt14) < 1e-12);
}

TEST_CASE("property: transfer functions map into [0,1] with the stated shape") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> wide(-50.0, 50.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> secs(0.0, 60.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = unit(gen), b = unit(gen);
    const double lo = std::min(a, b), hi = std::max(a, b);
    if (lo < hi) CHECK(PSufferGoalProgress(lo, kCfg) > PSufferGoalProgress(hi, kCfg));

    const double j = wide(gen);
    const double pj = PSufferJerk(j, kCfg);
    CHECK(pj >= 0.0);
    CHECK(pj <= 1.0);
    CHECK(pj == PSufferJerk(-j, kCfg));
    if (j != 0.0) CHECK(pj > PSufferJerk(0.0, kCfg));

    const double s = secs(gen), t = secs(gen);
    const double s_lo = std::min(s, t), s_hi = std::max(s, t);
    CHECK(PSufferLocalisation(s_lo, kCfg) <= PSufferLocalisation(s_hi, kCfg));
    if (s_hi >= 5.0) CHECK(PSufferLocalisation(s_hi, kCfg) == 1.0);
    // Strict monotonicity within the non-saturated range of the logistic.
    const double v_lo = s_lo / 8.0, v_hi = s_hi / 8.0;
    if (v_lo < v_hi) {
      CHECK(PSufferVelocity(v_lo, kCfg) < PSufferVelocity(v_hi, kCfg));
      CHECK(PSufferNoise(v_lo / 4, kCfg) < PSufferNoise(v_hi / 4, kCfg));
    }
    for (double p : {PSufferGoalProgress(wide(gen), kCfg), PSufferLocalisation(s, kCfg),
                     PSufferVelocity(wide(gen), kCfg), PSufferNoise(wide(gen), kCfg)}) {
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
  }
}

TEST_CASE("matched filter") {
  const std::vector<double> ideal(5, -kParams.v_nominal);
  CHECK(MatchedFilterEvent(ideal, kParams, kCfg) == doctest::Approx(1.0));
  const std::vector<double> away(5, kParams.v_nominal);
  CHECK(MatchedFilterEvent(away, kParams, kCfg) == doctest::Approx(-1.0));
  const std::vector<double> stalled(5, 0.0);
  CHECK(MatchedFilterEvent(stalled, kParams, kCfg) == 0.0);
  const std::vector<double> short_window(4, 0.0);
  CHECK_THROWS_AS(MatchedFilterEvent(short_window, kParams, kCfg), std::invalid_argument);

  CHECK(ClassifyGoalProgress(0.9, kCfg) == GoalSimilarity::kSimilar);
  CHECK(ClassifyGoalProgress(0.1, kCfg) == GoalSimilarity::kNeutral);
  CHECK(ClassifyGoalProgress(-0.5, kCfg) == GoalSimilarity::kDissimilar);
}

TEST_CASE("property: matched filter is linear below the clamp and bounded") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> alpha(-3.0, 3.0);
  std::uniform_real_distribution<double> noise(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = alpha(gen);
    const std::vector<double> scaled(5, -kParams.v_nominal * a);
    CHECK(MatchedFilterEvent(scaled, kParams, kCfg) ==
          doctest::Approx(std::clamp(a, -1.0, 1.0)).epsilon(1e-12));
    std::vector<double> w(5);
    for (auto& x : w) x = noise(gen);
    const double d = MatchedFilterEvent(w, kParams, kCfg);
    CHECK(d >= -1.0);
    CHECK(d <= 1.0);
  }
}

TEST_CASE("property: consecutive event seconds") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<bool> flags(1 + gen() % 50);
    for (std::size_t i = 0; i < flags.size(); ++i) flags[i] = gen() % 3 != 0;
    const auto counts = ConsecutiveEventSeconds(flags);
    REQUIRE(counts.size() == flags.size());
    for (std::size_t i = 0; i < flags.size(); ++i) {
      CHECK(counts[i] <= static_cast<int>(i + 1));
      if (!flags[i]) CHECK(counts[i] == 0);
      else CHECK(counts[i] == (i == 0 ? 1 : counts[i - 1] + 1));
    }
  }
}

TEST_CASE("speed, jerk signal and localisation error helpers") {
  const std::vector<Pose2D> poses = {{0, 0, 0}, {3, 4, 0}, {3, 4, 1}};
  CHECK(SpeedSeries(poses) == std::vector<double>{5.0, 0.0});
  CHECK_THROWS(SpeedSeries(std::span<const Pose2D>(poses.data(), 1)));
  const std::vector<double> az = {9.8, 9.8, 10.3};
  const auto j = JerkSignal(az);
  REQUIRE(j.size() == 2);
  CHECK(j[1] == doctest::Approx(0.5));
  CHECK(LocalisationError({1, 1, 0}, {4, 5, 2}) == doctest::Approx(5.0));
  CHECK(DistanceToGoal({0, 0, 0}, {3, 4, 0}) == doctest::Approx(5.0));
}

TEST_CASE("ComputeVitals: availability and a clean approach") {
  TelemetryLog log;
  log.range_max = 10.0;
  for (int k = 0; k < 8; ++k) log.frames.push_back(Tick(k, 0.5 * k, 0.5 * k, 9.81));
  const auto vitals = ComputeVitals(log, kCfg);
  REQUIRE(vitals.size() == 8);
  const auto at = [&](std::size_t k, VitalId id) { return vitals[k][static_cast<std::size_t>(id)]; };

  CHECK_FALSE(at(0, VitalId::kJerk).available);
  CHECK(at(1, VitalId::kJerk).available);
  CHECK(at(1, VitalId::kJerk).raw == 0.0);
  CHECK_FALSE(at(4, VitalId::kGoalProgress).available);
  CHECK(at(5, VitalId::kGoalProgress).available);
  CHECK(at(5, VitalId::kGoalProgress).raw == doctest::Approx(1.0));
  CHECK(at(5, VitalId::kGoalProgress).p_suffering == doctest::Approx(oracle::Logistic(1.0, -6, -0.15)));
  // Cruising at v_nominal: no velocity or localisation events.
  CHECK(at(7, VitalId::kVelocity).raw == 0.0);
  CHECK(at(7, VitalId::kLocalisationError).raw == 0.0);
  // Flat scan: noise statistic is 0.
  CHECK(at(7, VitalId::kLaserNoise).raw == 0.0);
  for (const auto& set : vitals) {
    for (std::size_t i = 0; i < kNumVitals; ++i) CHECK(set[i].id == kAllVitals[i]);
  }
}

TEST_CASE("ComputeVitals without accel keeps four vitals") {
  TelemetryLog log;
  for (int k = 0; k < 8; ++k) log.frames.push_back(Tick(k, 0.5 * k, 0.5 * k, std::nullopt));
  const auto vitals = ComputeVitals(log, kCfg);
  int available = 0;
  for (const auto& r : vitals.back()) available += r.available ? 1 : 0;
  CHECK(available == 4);
  CHECK_FALSE(vitals.back()[static_cast<std::size_t>(VitalId::kJerk)].available);
}

TEST_CASE("velocity and localisation counters") {
  TelemetryLog log;
  // Stalled robot whose raw odometry creeps away at 0.1 m per tick.
  for (int k = 0; k < 8; ++k) log.frames.push_back(Tick(k, 0.0, 0.1 * k, 9.81));
  const auto vitals = ComputeVitals(log, kCfg);
  const auto& last = vitals.back();
  CHECK(last[static_cast<std::size_t>(VitalId::kVelocity)].raw == 7.0);
  CHECK(last[static_cast<std::size_t>(VitalId::kLocalisationError)].raw == 7.0);
  CHECK(last[static_cast<std::size_t>(VitalId::kLocalisationError)].p_suffering == 1.0);
  CHECK(vitals[3][static_cast<std::size_t>(VitalId::kLocalisationError)].p_suffering ==
        doctest::Approx(0.6));
}

TEST_CASE("VitalConfig validation") {
  VitalConfig cfg;
  CHECK_NOTHROW(cfg.Validate());
  cfg.goal.window = 0;
  CHECK_THROWS_AS(cfg.Validate(), std::invalid_argument);
}

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

#include "robovitals/config.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "robovitals/errors.hpp"

namespace robovitals {

namespace {

using Setter = std::function<void(EngineConfig&, double)>;

template <typename Get>
Setter SetReal(Get get) {
  return [get](EngineConfig& c, double v) { get(c) = v; };
}

template <typename Get>
Setter SetCount(Get get) {
  return [get](EngineConfig& c, double v) {
    if (v < 0.0 || v != std::floor(v)) throw InputError("expected a non-negative integer");
    get(c) = static_cast<std::size_t>(v);
  };
}

const std::map<std::string, Setter, std::less<>>& Setters() {
  static const std::map<std::string, Setter, std::less<>> kSetters = {
      {"vitals.goal.a", SetReal([](EngineConfig& c) -> double& { return c.vitals.goal.a; })},
      {"vitals.goal.b", SetReal([](EngineConfig& c) -> double& { return c.vitals.goal.b; })},
      {"vitals.goal.window",
       SetCount([](EngineConfig& c) -> std::size_t& { return c.vitals.goal.window; })},
      {"vitals.goal.similarity",
       SetReal([](EngineConfig& c) -> double& { return c.vitals.goal.similarity; })},
      {"vitals.jerk.sigma1",
       SetReal([](EngineConfig& c) -> double& { return c.vitals.jerk.sigma1; })},
      {"vitals.jerk.sigma2",
       SetReal([](EngineConfig& c) -> double& { return c.vitals.jerk.sigma2; })},
      {"vitals.jerk.topple",
       SetReal([](EngineConfig& c) -> double& { return c.vitals.jerk.topple; })},
      {"vitals.loc.k", SetReal([](EngineConfig& c) -> double& { return c.vitals.loc.k; })},
      {"vitals.loc.saturation",
       SetReal([](EngineConfig& c) -> double& { return c.vitals.loc.saturation; })},
      {"vitals.loc.epsilon",
       SetReal([](EngineConfig& c) -> double& { return c.vitals.loc.epsilon; })},
      {"vitals.vel.a", SetReal([](EngineConfig& c) -> double& { return c.vitals.vel.a; })},
      {"vitals.vel.b", SetReal([](EngineConfig& c) -> double& { return c.vitals.vel.b; })},
      {"vitals.noise.a", SetReal([](EngineConfig& c) -> double& { return c.vitals.noise.a; })},
      {"vitals.noise.b", SetReal([](EngineConfig& c) -> double& { return c.vitals.noise.b; })},
      {"health.window",
       SetCount([](EngineConfig& c) -> std::size_t& { return c.health.window; })},
      {"health.alert_threshold",
       SetReal([](EngineConfig& c) -> double& { return c.health.alert_threshold; })},
      {"health.alert_min_duration",
       SetCount([](EngineConfig& c) -> std::size_t& { return c.health.alert_min_duration; })},
      {"robot.v_nominal", [](EngineConfig& c, double v) { c.robot.v_nominal = v; }},
      {"robot.v_max", [](EngineConfig& c, double v) { c.robot.v_max = v; }},
      {"robot.v_trivial", [](EngineConfig& c, double v) { c.robot.v_trivial = v; }},
  };
  return kSetters;
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

}  // namespace

RobotParams EngineConfig::ApplyRobot(RobotParams params) const {
  if (robot.v_nominal) params.v_nominal = *robot.v_nominal;
  if (robot.v_max) params.v_max = *robot.v_max;
  if (robot.v_trivial) params.v_trivial = *robot.v_trivial;
  return params;
}

void ApplyOverride(EngineConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw InputError("override '" + std::string(assignment) + "' is not key=value");
  }
  const std::string_view key = Trim(assignment.substr(0, eq));
  const std::string value(Trim(assignment.substr(eq + 1)));
  const auto& setters = Setters();
  const auto it = setters.find(key);
  if (it == setters.end()) throw InputError("unknown config key '" + std::string(key) + "'");

  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size() || !std::isfinite(v)) {
    throw InputError("config key '" + std::string(key) + "': not a number: '" + value + "'");
  }
  try {
    it->second(cfg, v);
  } catch (const InputError& e) {
    throw InputError("config key '" + std::string(key) + "': " + e.what());
  }
}

std::vector<std::string> OverrideKeys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : Setters()) keys.push_back(k);
  return keys;
}

}  // namespace robovitals

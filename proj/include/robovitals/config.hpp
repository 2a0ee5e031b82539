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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "robovitals/health.hpp"
#include "robovitals/telemetry.hpp"
#include "robovitals/vitals.hpp"

namespace robovitals {

/// Every tunable constant of the monitoring pipeline. Robot overrides are
/// kept separate because robot parameters usually come from the log header.
struct EngineConfig {
  VitalConfig vitals;
  HealthConfig health;
  struct RobotOverrides {
    std::optional<double> v_nominal;
    std::optional<double> v_max;
    std::optional<double> v_trivial;
  } robot;

  RobotParams ApplyRobot(RobotParams params) const;
};

/// Applies one dotted `key=value` override, e.g. "vitals.noise.a=4". Throws
/// InputError for unknown keys or malformed values.
void ApplyOverride(EngineConfig& cfg, std::string_view assignment);

/// Names of all accepted override keys.
std::vector<std::string> OverrideKeys();

}  // namespace robovitals

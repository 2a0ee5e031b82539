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

#include <stdexcept>
#include <string>

#include <doctest.h>

#include "robovitals/config.hpp"
#include "robovitals/errors.hpp"

using namespace robovitals;

TEST_CASE("overrides set the named constant") {
  EngineConfig cfg;
  ApplyOverride(cfg, "vitals.noise.a=4");
  ApplyOverride(cfg, " health.window = 7 ");
  ApplyOverride(cfg, "health.alert_threshold=-1.2");
  ApplyOverride(cfg, "robot.v_nominal=0.4");
  CHECK(cfg.vitals.noise.a == 4.0);
  CHECK(cfg.health.window == 7);
  CHECK(cfg.health.alert_threshold == -1.2);
  const RobotParams p = cfg.ApplyRobot(RobotParams{});
  CHECK(p.v_nominal == 0.4);
  CHECK(p.v_max == RobotParams{}.v_max);
}

TEST_CASE("every listed key is accepted") {
  for (const auto& key : OverrideKeys()) {
    EngineConfig cfg;
    CHECK_NOTHROW(ApplyOverride(cfg, key + "=3"));
  }
  CHECK(OverrideKeys().size() == 20);
}

TEST_CASE("bad overrides are input errors") {
  EngineConfig cfg;
  CHECK_THROWS_AS(ApplyOverride(cfg, "vitals.noise.c=1"), InputError);
  CHECK_THROWS_AS(ApplyOverride(cfg, "vitals.noise.a"), InputError);
  CHECK_THROWS_AS(ApplyOverride(cfg, "vitals.noise.a=x"), InputError);
  CHECK_THROWS_AS(ApplyOverride(cfg, "vitals.noise.a=1x"), InputError);
  CHECK_THROWS_AS(ApplyOverride(cfg, "health.window=2.5"), InputError);
  CHECK_THROWS_AS(ApplyOverride(cfg, "health.window=-1"), InputError);
  CHECK_THROWS_AS(ApplyOverride(cfg, "vitals.jerk.topple=inf"), InputError);
}

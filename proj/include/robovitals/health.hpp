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

// Robot health: vitals are averaged into a total probability of suffering
// per tick, and health over a window is sum(p ln p) of those totals. Health
// is never positive; 0 means every tick in the window was certain (p = 0 or
// p = 1).

#pragma once

#include <cstddef>
#include <deque>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "robovitals/vitals.hpp"

namespace robovitals {

struct HealthConfig {
  std::size_t window = 5;  // ticks
  double alert_threshold = -1.4;
  std::size_t alert_min_duration = 3;  // ticks

  void Validate() const;
};

struct HealthSample {
  double t = 0.0;
  double p_total = 0.0;
  double health = 0.0;
  int n_vitals = 0;
};

struct AlertEvent {
  double t_start = 0.0;
  double t_end = 0.0;
  double min_health = 0.0;
};

/// Mean p_suffering over available readings. Throws InsufficientDataError
/// ("no vitals") when none are available.
double TotalSuffering(std::span<const VitalReading> readings);

/// p ln p with 0 ln 0 = 0. Throws std::invalid_argument outside [0, 1].
double EntropyTerm(double p);

/// Sum of EntropyTerm over the window. Throws std::invalid_argument if empty.
double HealthOverWindow(std::span<const double> p_totals);

/// Trailing-window health at each tick (window truncated during warm-up).
/// Ticks are numbered 0, 1, ... unless `times` is given.
std::vector<HealthSample> InstantaneousHealthSeries(
    std::span<const double> p_totals, const HealthConfig& cfg,
    std::span<const double> times = {});

double AverageHealth(std::span<const HealthSample> trial);

/// Maximal runs of at least cfg.alert_min_duration consecutive samples with
/// health below cfg.alert_threshold.
std::vector<AlertEvent> DetectAlerts(std::span<const HealthSample> series,
                                     const HealthConfig& cfg);

/// Sliding-window health accumulator for one stream.
class HealthTracker {
 public:
  explicit HealthTracker(HealthConfig cfg);

  HealthSample Update(double t, std::span<const VitalReading> readings);

 private:
  HealthConfig cfg_;
  std::deque<double> window_;
};

/// Streaming counterpart of DetectAlerts. Update() returns an event the first
/// time a run reaches the minimum duration; its t_end and min_health reflect
/// the run so far. Finish() closes any open run.
class AlertDetector {
 public:
  explicit AlertDetector(HealthConfig cfg);

  std::optional<AlertEvent> Update(const HealthSample& sample);

  /// Closed, qualifying events seen so far (including a trailing open run
  /// once Finish() is called).
  const std::vector<AlertEvent>& events() const { return events_; }
  void Finish();

 private:
  void CloseRun();

  HealthConfig cfg_;
  std::optional<AlertEvent> run_;
  std::size_t run_length_ = 0;
  std::vector<AlertEvent> events_;
};

void WriteHealthCsv(std::ostream& out, std::span<const HealthSample> series);
void WriteAlertsCsv(std::ostream& out, std::span<const AlertEvent> alerts);

}  // namespace robovitals

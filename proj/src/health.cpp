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

#include "robovitals/health.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "robovitals/errors.hpp"

namespace robovitals {

void HealthConfig::Validate() const {
  if (window < 1) throw std::invalid_argument("health window must be >= 1");
  if (!(alert_threshold < 0.0)) {
    throw std::invalid_argument("alert threshold must be negative");
  }
  if (alert_min_duration < 1) {
    throw std::invalid_argument("alert min duration must be >= 1");
  }
}

double TotalSuffering(std::span<const VitalReading> readings) {
  double sum = 0.0;
  int n = 0;
  for (const auto& r : readings) {
    if (!r.available) continue;
    sum += r.p_suffering;
    ++n;
  }
  if (n == 0) throw InsufficientDataError("no vitals");
  return std::clamp(sum / n, 0.0, 1.0);
}

double EntropyTerm(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("probability outside [0, 1]");
  }
  if (p == 0.0) return 0.0;
  return p * std::log(p);
}

double HealthOverWindow(std::span<const double> p_totals) {
  if (p_totals.empty()) throw std::invalid_argument("empty health window");
  double h = 0.0;
  for (double p : p_totals) h += EntropyTerm(p);
  return h;
}

std::vector<HealthSample> InstantaneousHealthSeries(std::span<const double> p_totals,
                                                    const HealthConfig& cfg,
                                                    std::span<const double> times) {
  cfg.Validate();
  if (!times.empty() && times.size() != p_totals.size()) {
    throw std::invalid_argument("times and p_totals differ in length");
  }
  std::vector<HealthSample> out;
  out.reserve(p_totals.size());
  for (std::size_t i = 0; i < p_totals.size(); ++i) {
    const std::size_t len = std::min(i + 1, cfg.window);
    HealthSample s;
    s.t = times.empty() ? static_cast<double>(i) : times[i];
    s.p_total = p_totals[i];
    s.health = HealthOverWindow(p_totals.subspan(i + 1 - len, len));
    out.push_back(s);
  }
  return out;
}

double AverageHealth(std::span<const HealthSample> trial) {
  if (trial.empty()) throw std::invalid_argument("empty trial");
  double sum = 0.0;
  for (const auto& s : trial) sum += s.health;
  return sum / static_cast<double>(trial.size());
}

std::vector<AlertEvent> DetectAlerts(std::span<const HealthSample> series,
                                     const HealthConfig& cfg) {
  AlertDetector detector(cfg);
  for (const auto& s : series) detector.Update(s);
  detector.Finish();
  return detector.events();
}

HealthTracker::HealthTracker(HealthConfig cfg) : cfg_(cfg) { cfg_.Validate(); }

HealthSample HealthTracker::Update(double t, std::span<const VitalReading> readings) {
  HealthSample s;
  s.t = t;
  s.p_total = TotalSuffering(readings);
  s.n_vitals = static_cast<int>(std::count_if(
      readings.begin(), readings.end(), [](const VitalReading& r) { return r.available; }));
  window_.push_back(s.p_total);
  if (window_.size() > cfg_.window) window_.pop_front();
  // Re-summed every tick so the result is exactly the windowed sum.
  s.health = 0.0;
  for (double p : window_) s.health += EntropyTerm(p);
  return s;
}

AlertDetector::AlertDetector(HealthConfig cfg) : cfg_(cfg) { cfg_.Validate(); }

std::optional<AlertEvent> AlertDetector::Update(const HealthSample& sample) {
  if (!(sample.health < cfg_.alert_threshold)) {
    CloseRun();
    return std::nullopt;
  }
  if (!run_) {
    run_ = AlertEvent{sample.t, sample.t, sample.health};
    run_length_ = 0;
  }
  run_->t_end = sample.t;
  run_->min_health = std::min(run_->min_health, sample.health);
  ++run_length_;
  if (run_length_ == cfg_.alert_min_duration) return run_;
  return std::nullopt;
}

void AlertDetector::Finish() { CloseRun(); }

void AlertDetector::CloseRun() {
  if (run_ && run_length_ >= cfg_.alert_min_duration) events_.push_back(*run_);
  run_.reset();
  run_length_ = 0;
}

void WriteHealthCsv(std::ostream& out, std::span<const HealthSample> series) {
  out << "t,p_total,health,n_vitals\n";
  for (const auto& s : series) {
    out << fmt::format("{},{},{},{}\n", s.t, s.p_total, s.health, s.n_vitals);
  }
}

void WriteAlertsCsv(std::ostream& out, std::span<const AlertEvent> alerts) {
  out << "t_start,t_end,min_health\n";
  for (const auto& a : alerts) {
    out << fmt::format("{},{},{}\n", a.t_start, a.t_end, a.min_health);
  }
}

}  // namespace robovitals

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

#include "robovitals/telemetry.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "robovitals/errors.hpp"

namespace robovitals {

using nlohmann::json;

double NormalizeAngle(double radians) {
  double a = std::remainder(radians, 2.0 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

void RobotParams::Validate() const {
  if (!(v_trivial > 0.0 && v_trivial < v_nominal && v_nominal <= v_max)) {
    throw std::invalid_argument(
        "robot params require 0 < v_trivial < v_nominal <= v_max");
  }
  if (!(sample_rate > 0.0)) {
    throw std::invalid_argument("sample_rate must be positive");
  }
}

bool TelemetryLog::HasAccel() const {
  return std::all_of(frames.begin(), frames.end(),
                     [](const TelemetryFrame& f) { return f.accel_z.has_value(); });
}

namespace {

double RequireNumber(const json& record, const char* key, std::size_t line_no) {
  auto it = record.find(key);
  if (it == record.end()) {
    throw ParseError(line_no, std::string("missing field '") + key + "'");
  }
  if (!it->is_number()) {
    throw ParseError(line_no, std::string("field '") + key + "' is not a number");
  }
  double v = it->get<double>();
  if (!std::isfinite(v)) {
    throw ParseError(line_no, std::string("field '") + key + "' is not finite");
  }
  return v;
}

void ReadOptionalNumber(const json& record, const char* key, double& out,
                        std::size_t line_no) {
  if (record.contains(key)) out = RequireNumber(record, key, line_no);
}

Pose2D ReadPose(const json& record, const char* kx, const char* ky,
                const char* kh, std::size_t line_no) {
  Pose2D p;
  p.x = RequireNumber(record, kx, line_no);
  p.y = RequireNumber(record, ky, line_no);
  p.heading = NormalizeAngle(RequireNumber(record, kh, line_no));
  return p;
}

json RangesToJson(const std::vector<double>& ranges) {
  json out = json::array();
  for (double r : ranges) {
    if (std::isfinite(r)) {
      out.push_back(r);
    } else {
      out.push_back(nullptr);
    }
  }
  return out;
}

}  // namespace

LogRecord ParseRecord(std::string_view line, std::size_t line_no,
                      double range_max) {
  json record;
  try {
    record = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
  }
  if (!record.is_object()) throw ParseError(line_no, "record is not an object");

  LogRecord out;
  if (!record.contains("t")) {
    RobotParams params;
    ReadOptionalNumber(record, "v_nominal", params.v_nominal, line_no);
    ReadOptionalNumber(record, "v_max", params.v_max, line_no);
    ReadOptionalNumber(record, "v_trivial", params.v_trivial, line_no);
    ReadOptionalNumber(record, "sample_rate", params.sample_rate, line_no);
    try {
      params.Validate();
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    out.header = params;
    if (record.contains("range_max")) {
      double rm = RequireNumber(record, "range_max", line_no);
      if (rm <= 0.0) throw ParseError(line_no, "range_max must be positive");
      out.header_range_max = rm;
    }
    return out;
  }

  TelemetryFrame f;
  f.t = RequireNumber(record, "t", line_no);
  if (f.t < 0.0) throw ParseError(line_no, "negative timestamp");
  f.fused_pose = ReadPose(record, "fx", "fy", "fh", line_no);
  f.raw_odom_pose = ReadPose(record, "ox", "oy", "oh", line_no);
  if (auto it = record.find("az"); it != record.end() && !it->is_null()) {
    f.accel_z = RequireNumber(record, "az", line_no);
  }
  f.goal.x = RequireNumber(record, "goal_x", line_no);
  f.goal.y = RequireNumber(record, "goal_y", line_no);

  f.scan.range_max = range_max;
  ReadOptionalNumber(record, "range_max", f.scan.range_max, line_no);
  auto ranges = record.find("ranges");
  if (ranges == record.end() || !ranges->is_array()) {
    throw ParseError(line_no, "missing array field 'ranges'");
  }
  f.scan.ranges.reserve(ranges->size());
  for (const auto& r : *ranges) {
    if (r.is_null()) {
      f.scan.ranges.push_back(std::numeric_limits<double>::infinity());
    } else if (r.is_number()) {
      f.scan.ranges.push_back(r.get<double>());
    } else {
      throw ParseError(line_no, "non-numeric range value");
    }
  }
  out.frame = std::move(f);
  return out;
}

TelemetryLog ParseLog(std::istream& in) {
  TelemetryLog log;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> ranges_len;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    LogRecord rec = ParseRecord(line, line_no, log.range_max);
    if (rec.header) {
      if (!log.frames.empty()) {
        throw ParseError(line_no, "header record after frames");
      }
      log.params = *rec.header;
      if (rec.header_range_max) log.range_max = *rec.header_range_max;
      continue;
    }
    TelemetryFrame& f = *rec.frame;
    if (!log.frames.empty() && !(f.t > log.frames.back().t)) {
      throw InputError("line " + std::to_string(line_no) +
                       ": timestamps must be strictly increasing");
    }
    if (ranges_len && f.scan.ranges.size() != *ranges_len) {
      throw ParseError(line_no, "scan length differs from earlier frames");
    }
    ranges_len = f.scan.ranges.size();
    log.frames.push_back(std::move(f));
  }
  if (log.frames.empty()) throw InputError("no frames");
  return log;
}

TelemetryLog ParseLogText(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParseLog(in);
}

std::string FormatHeader(const RobotParams& params, double range_max) {
  json h;
  h["v_nominal"] = params.v_nominal;
  h["v_max"] = params.v_max;
  h["v_trivial"] = params.v_trivial;
  h["sample_rate"] = params.sample_rate;
  h["range_max"] = range_max;
  return h.dump();
}

std::string FormatFrame(const TelemetryFrame& f) {
  // Key order is part of the format, so build an ordered object.
  nlohmann::ordered_json r;
  r["t"] = f.t;
  r["fx"] = f.fused_pose.x;
  r["fy"] = f.fused_pose.y;
  r["fh"] = f.fused_pose.heading;
  r["ox"] = f.raw_odom_pose.x;
  r["oy"] = f.raw_odom_pose.y;
  r["oh"] = f.raw_odom_pose.heading;
  if (f.accel_z) {
    r["az"] = *f.accel_z;
  } else {
    r["az"] = nullptr;
  }
  r["goal_x"] = f.goal.x;
  r["goal_y"] = f.goal.y;
  r["ranges"] = RangesToJson(f.scan.ranges);
  return r.dump();
}

void WriteLog(std::ostream& out, const TelemetryLog& log) {
  out << FormatHeader(log.params, log.range_max) << '\n';
  for (const auto& f : log.frames) out << FormatFrame(f) << '\n';
}

std::vector<double> RollingMean(std::span<const double> series,
                                std::size_t window) {
  if (window == 0) throw std::invalid_argument("rolling_mean window must be >= 1");
  std::vector<double> out;
  out.reserve(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    std::size_t first = i + 1 >= window ? i + 1 - window : 0;
    double sum = 0.0;
    for (std::size_t j = first; j <= i; ++j) sum += series[j];
    out.push_back(sum / static_cast<double>(i + 1 - first));
  }
  return out;
}

std::vector<double> FiniteDifference(std::span<const double> series, double dt) {
  if (series.size() < 2) throw std::invalid_argument("need two samples");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  std::vector<double> out(series.size() - 1);
  for (std::size_t i = 0; i + 1 < series.size(); ++i) {
    out[i] = (series[i + 1] - series[i]) / dt;
  }
  return out;
}

TelemetryFrame Resampler::MakeTick(std::int64_t tick, const TelemetryFrame& source) {
  const double k = static_cast<double>(tick);
  TelemetryFrame out = source;
  out.t = k;
  while (!accel_window_.empty() && accel_window_.front().first <= k - 1.0) {
    accel_window_.pop_front();
  }
  if (source.accel_z && !accel_window_.empty()) {
    double sum = 0.0;
    for (const auto& [t, a] : accel_window_) sum += a;
    out.accel_z = sum / static_cast<double>(accel_window_.size());
  }
  return out;
}

std::vector<TelemetryFrame> Resampler::Push(const TelemetryFrame& frame) {
  std::vector<TelemetryFrame> ready;
  if (last_) {
    if (!(frame.t > last_->t)) {
      throw InputError("timestamps must be strictly increasing");
    }
    while (static_cast<double>(next_tick_) < frame.t) {
      ready.push_back(MakeTick(next_tick_, *last_));
      ++next_tick_;
    }
  } else {
    next_tick_ = static_cast<std::int64_t>(std::ceil(frame.t));
  }
  last_ = frame;
  if (frame.accel_z) {
    accel_window_.emplace_back(frame.t, *frame.accel_z);
  } else {
    accel_window_.clear();
  }
  if (static_cast<double>(next_tick_) == frame.t) {
    ready.push_back(MakeTick(next_tick_, frame));
    ++next_tick_;
  }
  return ready;
}

TelemetryLog Resample1Hz(const TelemetryLog& log) {
  if (log.frames.empty()) throw InputError("no frames");
  if (log.frames.back().t - log.frames.front().t < 1.0) {
    throw InsufficientDataError("insufficient duration");
  }
  TelemetryLog out;
  out.params = log.params;
  out.range_max = log.range_max;
  Resampler resampler;
  for (const auto& f : log.frames) {
    for (auto& tick : resampler.Push(f)) out.frames.push_back(std::move(tick));
  }
  if (!log.HasAccel()) {
    for (auto& f : out.frames) f.accel_z.reset();
  }
  return out;
}

}  // namespace robovitals

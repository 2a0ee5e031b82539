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

// Telemetry data model, the JSONL log format, and the preprocessing
// primitives shared by all vitals.
//
// A log is newline-delimited JSON. The optional first record is a header
// carrying robot parameters:
//
//   {"v_nominal":0.5,"v_max":1.0,"v_trivial":0.01,"sample_rate":1.0,
//    "range_max":10.0}
//
// Every other record is one frame:
//
//   {"t":0.0,"fx":..,"fy":..,"fh":..,"ox":..,"oy":..,"oh":..,"az":null,
//    "goal_x":..,"goal_y":..,"ranges":[..]}
//
// A record is a header iff it has no "t" key. Non-finite ranges are written
// as null.

#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace robovitals {

inline constexpr double kDefaultRangeMax = 20.0;

struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;  // radians, (-pi, pi]
};

/// Wraps an angle into (-pi, pi].
double NormalizeAngle(double radians);

struct LaserScan {
  std::vector<double> ranges;
  double range_max = kDefaultRangeMax;
};

struct TelemetryFrame {
  double t = 0.0;  // seconds since trial start
  Pose2D fused_pose;
  Pose2D raw_odom_pose;
  std::optional<double> accel_z;  // absent on robots without an IMU
  LaserScan scan;
  Pose2D goal;
};

struct RobotParams {
  double v_nominal = 0.5;
  double v_max = 1.0;
  double v_trivial = 0.01;
  double sample_rate = 1.0;

  /// Throws std::invalid_argument unless 0 < v_trivial < v_nominal <= v_max.
  void Validate() const;
};

struct TelemetryLog {
  std::vector<TelemetryFrame> frames;
  RobotParams params;
  double range_max = kDefaultRangeMax;

  /// True when every frame carries accel_z.
  bool HasAccel() const;
};

// ---------------------------------------------------------------------------
// JSONL format

/// Parses a whole log. Throws ParseError (bad record, naming the line) or
/// InputError ("no frames", non-monotone timestamps).
TelemetryLog ParseLog(std::istream& in);
TelemetryLog ParseLogText(std::string_view text);

/// One parsed line of a stream: either a header or a frame.
struct LogRecord {
  std::optional<RobotParams> header;
  std::optional<double> header_range_max;
  std::optional<TelemetryFrame> frame;
};

/// Parses a single record. `range_max` is applied to frames that do not carry
/// their own. Throws ParseError on malformed input.
LogRecord ParseRecord(std::string_view line, std::size_t line_no,
                      double range_max);

std::string FormatHeader(const RobotParams& params, double range_max);
std::string FormatFrame(const TelemetryFrame& frame);

/// Writes header + frames, one record per line.
void WriteLog(std::ostream& out, const TelemetryLog& log);

// ---------------------------------------------------------------------------
// Preprocessing

/// output[i] = mean of the last min(i+1, window) inputs.
/// Throws std::invalid_argument for window == 0.
std::vector<double> RollingMean(std::span<const double> series,
                                std::size_t window);

/// output[i] = (series[i+1] - series[i]) / dt.
/// Throws std::invalid_argument for fewer than two samples or dt <= 0.
std::vector<double> FiniteDifference(std::span<const double> series, double dt);

/// Streaming zero-order-hold resampler onto integer-second ticks.
///
/// Tick k is emitted as soon as it is final: when a frame with t == k arrives
/// or the first frame with t > k arrives, so output lags input by at most one
/// tick. Poses, scan and goal are the last sample at or before k; accel_z is
/// the mean of raw samples in (k-1, k], or the held value if that interval is
/// empty.
class Resampler {
 public:
  /// Returns the ticks that became final. Throws InputError if `frame.t` is
  /// not strictly greater than the previous frame's.
  std::vector<TelemetryFrame> Push(const TelemetryFrame& frame);

 private:
  TelemetryFrame MakeTick(std::int64_t tick, const TelemetryFrame& source);

  std::optional<TelemetryFrame> last_;
  std::int64_t next_tick_ = 0;
  std::deque<std::pair<double, double>> accel_window_;  // (t, accel_z)
};

/// Batch resampling to 1 Hz. If any input frame lacks accel_z, no output frame
/// carries it. Throws InsufficientDataError("insufficient duration") when the
/// log spans less than one second.
TelemetryLog Resample1Hz(const TelemetryLog& log);

}  // namespace robovitals

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

#include <cstddef>
#include <vector>

#include "robovitals/telemetry.hpp"

namespace robovitals {

/// Row-major grayscale image.
class Image {
 public:
  Image() = default;
  Image(std::size_t width, std::size_t height, double fill = 0.0)
      : width_(width), height_(height), pixels_(width * height, fill) {}

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }

  double& at(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }
  double at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }

  const std::vector<double>& pixels() const { return pixels_; }

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> pixels_;
};

/// Non-finite ranges become range_max; everything is clamped to
/// [0, range_max].
std::vector<double> SanitizeRanges(const LaserScan& scan);

/// Lays a sanitised scan out as an s x s image, s = ceil(sqrt(N)), row-major.
/// Cells past the end repeat the last range. Throws std::invalid_argument
/// ("scan too short") when N < 9.
Image ScanToSquareImage(const LaserScan& scan);

/// Immerkaer's fast noise estimate:
///
///   sqrt(pi/2) / (6 (W-2) (H-2)) * sum |I * M|,  M = [1 -2 1; -2 4 -2; 1 -2 1]
///
/// over the valid (interior) region. M is the outer product of [1 -2 1] with
/// itself, so the response is computed as two separable second differences.
/// Throws std::invalid_argument for images smaller than 3x3.
double NoiseVariance(const Image& image);

}  // namespace robovitals

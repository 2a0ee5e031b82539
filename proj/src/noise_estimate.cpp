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

#include "robovitals/noise_estimate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace robovitals {

std::vector<double> SanitizeRanges(const LaserScan& scan) {
  std::vector<double> out;
  out.reserve(scan.ranges.size());
  for (double r : scan.ranges) {
    if (!std::isfinite(r)) r = scan.range_max;
    out.push_back(std::clamp(r, 0.0, scan.range_max));
  }
  return out;
}

Image ScanToSquareImage(const LaserScan& scan) {
  const std::size_t n = scan.ranges.size();
  if (n < 9) throw std::invalid_argument("scan too short");
  const std::vector<double> ranges = SanitizeRanges(scan);

  auto side = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (side * side < n) ++side;
  while (side > 0 && (side - 1) * (side - 1) >= n) --side;

  Image image(side, side, ranges.back());
  for (std::size_t i = 0; i < n; ++i) image.at(i % side, i / side) = ranges[i];
  return image;
}

double NoiseVariance(const Image& image) {
  const std::size_t w = image.width();
  const std::size_t h = image.height();
  if (w < 3 || h < 3) {
    throw std::invalid_argument("noise estimate needs an image of at least 3x3");
  }

  // Horizontal second difference, valid region: (w-2) x h.
  Image dx(w - 2, h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x + 2 < w; ++x) {
      dx.at(x, y) = image.at(x, y) - 2.0 * image.at(x + 1, y) + image.at(x + 2, y);
    }
  }

  double sum = 0.0;
  for (std::size_t y = 0; y + 2 < h; ++y) {
    for (std::size_t x = 0; x < w - 2; ++x) {
      sum += std::abs(dx.at(x, y) - 2.0 * dx.at(x, y + 1) + dx.at(x, y + 2));
    }
  }

  const double interior = static_cast<double>((w - 2) * (h - 2));
  return std::sqrt(std::numbers::pi / 2.0) * sum / (6.0 * interior);
}

}  // namespace robovitals

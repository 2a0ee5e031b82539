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

// Independent reference computations used only by tests. None of these call
// into the library.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace robovitals::oracle {

// Logistic written as e^z / (1 + e^z) with z = a (x - b).
inline double Logistic(double x, double a, double b) {
  const double z = a * (x - b);
  return z > 0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
}

// 1 - N(j; 0, sigma2) scaled by sigma2 / sigma1, evaluated from the Gaussian
// density.
inline double InvertedBell(double j, double sigma1, double sigma2) {
  const double gauss = std::exp(-j * j / (2.0 * sigma2 * sigma2));
  return 1.0 - gauss / (sigma1 * std::sqrt(2.0 * std::numbers::pi));
}

// Full 2D 3x3 convolution with the Laplacian-difference mask, no separable
// shortcut.
inline double ImmerkaerBruteForce(const std::vector<std::vector<double>>& img) {
  static constexpr double kMask[3][3] = {{1, -2, 1}, {-2, 4, -2}, {1, -2, 1}};
  const std::size_t h = img.size();
  const std::size_t w = img[0].size();
  double sum = 0.0;
  for (std::size_t y = 1; y + 1 < h; ++y) {
    for (std::size_t x = 1; x + 1 < w; ++x) {
      double r = 0.0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) r += kMask[dy + 1][dx + 1] * img[y + dy][x + dx];
      }
      sum += std::abs(r);
    }
  }
  return std::sqrt(std::numbers::pi / 2.0) * sum /
         (6.0 * static_cast<double>((w - 2) * (h - 2)));
}

// Classic no-ties Spearman: 1 - 6 sum d^2 / (n (n^2 - 1)).
inline double SpearmanNoTies(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  auto rank = [n](const std::vector<double>& v, std::size_t i) {
    double r = 1.0;
    for (std::size_t j = 0; j < n; ++j) r += v[j] < v[i] ? 1.0 : 0.0;
    return r;
  };
  double d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = rank(xs, i) - rank(ys, i);
    d2 += d * d;
  }
  const double nn = static_cast<double>(n);
  return 1.0 - 6.0 * d2 / (nn * (nn * nn - 1.0));
}

inline double PLogP(double p) { return p <= 0.0 ? 0.0 : p * std::log(p); }

}  // namespace robovitals::oracle

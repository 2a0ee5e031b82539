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

#include <cstdint>
#include <random>

namespace robovitals {

/// z = sqrt(-2 ln u1) cos(2 pi u2) for u1 in (0, 1], u2 in [0, 1).
/// Throws std::invalid_argument outside those ranges.
double BoxMuller(double u1, double u2);

/// Seeded generator with a fully specified output sequence: mt19937_64 plus
/// explicit conversions (the std distributions are implementation-defined).
/// `stream` separates independent draws derived from one seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Uniform in [0, 1), 53 bits.
  double Uniform();

  /// Standard normal via BoxMuller.
  double Normal();

  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t Below(std::uint64_t n);

  bool operator==(const Rng&) const = default;

 private:
  std::mt19937_64 engine_;
};

}  // namespace robovitals

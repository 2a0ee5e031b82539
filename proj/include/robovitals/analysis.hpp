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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "robovitals/health.hpp"
#include "robovitals/vitals.hpp"

namespace robovitals {

inline constexpr std::uint64_t kDefaultPermutationSeed = 0x5eed;
inline constexpr std::size_t kDefaultPermutations = 10000;

struct TrialSummary {
  int level = 0;
  std::uint64_t seed = 0;
  bool completed = false;
  double t_comp = 0.0;
  double avg_health = 0.0;

  bool operator==(const TrialSummary&) const = default;
};

struct CorrelationResult {
  double rho = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

/// 1-based ranks; tied values share the mean of their ranks.
std::vector<double> FractionalRanks(std::span<const double> values);

/// Spearman's rho (Pearson correlation of fractional ranks) with a two-sided
/// Monte-Carlo permutation p-value, (count + 1) / (permutations + 1).
/// Throws std::invalid_argument for mismatched lengths or n < 3, and
/// InsufficientDataError("zero rank variance") when either side is constant.
CorrelationResult Spearman(std::span<const double> xs, std::span<const double> ys,
                           std::uint64_t seed = kDefaultPermutationSeed,
                           std::size_t permutations = kDefaultPermutations);

/// Runs every (level, base_seed + i) trial. Results are in (level, seed)
/// order regardless of `threads`; 0 threads means hardware concurrency.
std::vector<TrialSummary> RunMatrix(std::span<const int> levels, int trials_per_level,
                                    std::uint64_t base_seed, const VitalConfig& vital_cfg,
                                    const HealthConfig& health_cfg, unsigned threads = 0);

/// Spearman over completed trials' (avg_health, T_comp). Throws
/// InsufficientDataError("insufficient data") with fewer than 3.
CorrelationResult CorrelateHealthTcomp(std::span<const TrialSummary> summaries);

struct LevelStats {
  int level = 0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double median_t_comp = 0.0;      // completed trials only
  double median_avg_health = 0.0;  // completed trials only
};

/// Per-level statistics in first-appearance order.
std::vector<LevelStats> SummarizeLevels(std::span<const TrialSummary> summaries);

double Median(std::vector<double> values);

/// CSV: level,seed,completed,T_comp,avg_health
void WriteSummaryCsv(std::ostream& out, std::span<const TrialSummary> summaries);

/// Plain-text report: rho, p_value, n, then per-level failure counts and
/// medians. `correlation` may be null when it could not be computed; `error`
/// is then printed in its place.
void WriteCorrelationReport(std::ostream& out, const CorrelationResult* correlation,
                            std::string_view error,
                            std::span<const TrialSummary> summaries);

}  // namespace robovitals

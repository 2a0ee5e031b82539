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

#include "robovitals/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "robovitals/errors.hpp"
#include "robovitals/random.hpp"
#include "robovitals/sim.hpp"

namespace robovitals {

namespace {

// Pearson correlation of two rank vectors with precomputed centred xs.
double CentredCorrelation(std::span<const double> xc, double x_norm,
                          std::span<const double> yc, double y_norm) {
  double dot = 0.0;
  for (std::size_t i = 0; i < xc.size(); ++i) dot += xc[i] * yc[i];
  return std::clamp(dot / (x_norm * y_norm), -1.0, 1.0);
}

std::vector<double> Centre(std::vector<double> v, double& norm) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  norm = 0.0;
  for (double& x : v) {
    x -= mean;
    norm += x * x;
  }
  norm = std::sqrt(norm);
  return v;
}

}  // namespace

std::vector<double> FractionalRanks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + j) / 2.0) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

CorrelationResult Spearman(std::span<const double> xs, std::span<const double> ys,
                           std::uint64_t seed, std::size_t permutations) {
  if (xs.size() != ys.size()) throw std::invalid_argument("spearman: length mismatch");
  if (xs.size() < 3) throw std::invalid_argument("spearman: need at least 3 pairs");

  double x_norm = 0.0;
  double y_norm = 0.0;
  const std::vector<double> xc = Centre(FractionalRanks(xs), x_norm);
  std::vector<double> yc = Centre(FractionalRanks(ys), y_norm);
  if (x_norm == 0.0 || y_norm == 0.0) throw InsufficientDataError("zero rank variance");

  CorrelationResult out;
  out.n = xs.size();
  out.rho = CentredCorrelation(xc, x_norm, yc, y_norm);

  // Fisher-Yates shuffles of the y ranks; the tolerance absorbs rounding
  // when a permutation reproduces |rho| exactly.
  Rng rng(seed);
  const double observed = std::abs(out.rho) - 1e-12;
  std::size_t extreme = 0;
  for (std::size_t p = 0; p < permutations; ++p) {
    for (std::size_t i = yc.size() - 1; i > 0; --i) {
      std::swap(yc[i], yc[rng.Below(i + 1)]);
    }
    if (std::abs(CentredCorrelation(xc, x_norm, yc, y_norm)) >= observed) ++extreme;
  }
  out.p_value = static_cast<double>(extreme + 1) / static_cast<double>(permutations + 1);
  return out;
}

std::vector<TrialSummary> RunMatrix(std::span<const int> levels, int trials_per_level,
                                    std::uint64_t base_seed, const VitalConfig& vital_cfg,
                                    const HealthConfig& health_cfg, unsigned threads) {
  if (trials_per_level < 1) throw std::invalid_argument("trials_per_level must be >= 1");
  for (int level : levels) DescribeLevel(level);

  std::vector<TrialSummary> out;
  for (int level : levels) {
    for (int i = 0; i < trials_per_level; ++i) {
      TrialSummary s;
      s.level = level;
      s.seed = base_seed + static_cast<std::uint64_t>(i);
      out.push_back(s);
    }
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < out.size(); i = next++) {
      try {
        TrialSummary& s = out[i];
        const TrialResult r = RunTrial(BuildLevel(s.level, s.seed), vital_cfg, health_cfg);
        s.completed = r.completed;
        s.t_comp = r.t_comp;
        s.avg_health = r.avg_health;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, out.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

CorrelationResult CorrelateHealthTcomp(std::span<const TrialSummary> summaries) {
  std::vector<double> health;
  std::vector<double> t_comp;
  for (const auto& s : summaries) {
    if (!s.completed) continue;
    health.push_back(s.avg_health);
    t_comp.push_back(s.t_comp);
  }
  if (health.size() < 3) throw InsufficientDataError("insufficient data");
  return Spearman(health, t_comp);
}

double Median(std::vector<double> values) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<LevelStats> SummarizeLevels(std::span<const TrialSummary> summaries) {
  std::vector<int> order;
  for (const auto& s : summaries) {
    if (std::find(order.begin(), order.end(), s.level) == order.end()) order.push_back(s.level);
  }
  std::vector<LevelStats> out;
  for (int level : order) {
    LevelStats st;
    st.level = level;
    std::vector<double> t_comp;
    std::vector<double> health;
    for (const auto& s : summaries) {
      if (s.level != level) continue;
      ++st.trials;
      if (!s.completed) {
        ++st.failures;
        continue;
      }
      t_comp.push_back(s.t_comp);
      health.push_back(s.avg_health);
    }
    st.median_t_comp = Median(t_comp);
    st.median_avg_health = Median(health);
    out.push_back(st);
  }
  return out;
}

void WriteSummaryCsv(std::ostream& out, std::span<const TrialSummary> summaries) {
  out << "level,seed,completed,T_comp,avg_health\n";
  for (const auto& s : summaries) {
    out << fmt::format("{},{},{},{},{}\n", s.level, s.seed, s.completed ? "true" : "false",
                       s.t_comp, s.avg_health);
  }
}

void WriteCorrelationReport(std::ostream& out, const CorrelationResult* correlation,
                            std::string_view error,
                            std::span<const TrialSummary> summaries) {
  out << "spearman correlation: avg_health vs T_comp (completed trials)\n";
  if (correlation) {
    out << fmt::format("rho = {:.6f}\np_value = {:.6f}\nn = {}\n", correlation->rho,
                       correlation->p_value, correlation->n);
  } else {
    out << "error = " << error << '\n';
  }
  out << "level  trials  failures  median_T_comp  median_avg_health\n";
  for (const auto& st : SummarizeLevels(summaries)) {
    out << fmt::format("{:>5}  {:>6}  {:>8}  {:>13.3f}  {:>17.6f}\n", st.level, st.trials,
                       st.failures, st.median_t_comp, st.median_avg_health);
  }
}

}  // namespace robovitals

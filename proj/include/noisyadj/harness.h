// Copyright 2026 The noisyadj Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOISYADJ_HARNESS_H_
#define NOISYADJ_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "noisyadj/analysis.h"
#include "noisyadj/error.h"
#include "noisyadj/estimators.h"
#include "noisyadj/graph.h"
#include "noisyadj/protocol.h"

namespace noisyadj {

struct EstimatorConfig {
  EstimatorKind kind = EstimatorKind::kTriOR;
  // Total budget. Two-round estimators split it 0.1/0.8/0.1 unless `split`
  // is set; standalone 2STAR spends it all on the noisy degrees unless
  // `split` is set, in which case split.eps0 is used.
  double epsilon = 1.0;
  std::optional<BudgetSplit> split;
  MechanismKind mechanism = MechanismKind::kWarnerRR;
  Count alpha = 20;
  double beta = 0.01;
  MatMulStrategy strategy;
  StageMask mask;
  // Report max(estimate, 0) instead of the raw estimate.
  bool clip_nonnegative = false;

  BudgetSplit EffectiveSplit() const;
  TwoRoundParams Params() const;
  // Entry variance of the GNAM release (0 for 2STAR).
  double GnamVariance() const;
  // Total budget the configured run charges.
  double LedgerTotal() const;
};

// A single estimator failure during a batch.
class TrialError : public Error {
 public:
  TrialError(std::size_t trial, const std::string& message)
      : Error("trial " + std::to_string(trial) + ": " + message), trial_(trial) {}
  std::size_t trial() const { return trial_; }

 private:
  std::size_t trial_;
};

// Runs the configured estimator once.
Estimate RunEstimator(const Graph& g, const EstimatorConfig& config, std::uint64_t seed);

// Seed of trial t in a batch started from `seed`.
std::uint64_t TrialSeed(std::uint64_t seed, std::size_t trial);

struct TrialReport {
  EstimatorConfig config;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  Count truth = 0;
  std::vector<double> values;
  TrialStatistics stats;
  // Closed form when one applies: TriOR, the two-round estimators without
  // projection or second noise, and 2STAR (unbounded variant).
  std::optional<TheoreticalMse> theoretical;
  // Accounting of trial 0.
  std::uint64_t cost_dl = 0;
  BudgetLedger ledger;
  RunTrace trace;
  ClampStats clamp;
};

// `trials` independent runs with seeds TrialSeed(seed, t). threads = 0
// uses one per hardware thread; results do not depend on it. Estimator
// failures are rethrown as TrialError.
TrialReport RunTrials(const Graph& g, const EstimatorConfig& config, std::size_t trials,
                      std::uint64_t seed, unsigned threads = 1);

// Closed-form MSE matching `config` on `g`, if any.
std::optional<TheoreticalMse> TheoreticalMseFor(const Graph& g, const EstimatorConfig& config);

struct JointReport {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  Count triangles = 0;
  Count quadrangles = 0;
  Count two_stars = 0;
  TrialStatistics triangle;
  TrialStatistics quadrangle;
  TrialStatistics two_star;
  std::uint64_t cost_dl = 0;
  BudgetLedger ledger;
};

JointReport RunJointTrials(const Graph& g, const TwoRoundParams& params, TriangleRoute route,
                           std::size_t trials, std::uint64_t seed);

struct TrendPoint {
  std::size_t n = 0;
  double average_degree = 0;
  Count truth = 0;
  // Unset for graphs without the target subgraph.
  std::optional<double> median_re;
  ReBoundShape bound;
};

struct TrendReport {
  std::vector<TrendPoint> points;
  // Median RE strictly decreasing along the family; false when any RE is
  // undefined.
  bool decreasing = false;
};

// Runs `config` on each graph of a family ordered by density.
TrendReport RunTrendCheck(const std::vector<Graph>& family, const EstimatorConfig& config,
                          std::size_t trials, std::uint64_t seed);

}  // namespace noisyadj

#endif  // NOISYADJ_HARNESS_H_

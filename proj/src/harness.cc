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

#include "noisyadj/harness.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

#include "noisyadj/rng.h"

namespace noisyadj {

BudgetSplit EstimatorConfig::EffectiveSplit() const {
  if (split) return *split;
  if (kind == EstimatorKind::kTwoStar) return {epsilon, 0, 0, 0};
  return BudgetSplit::FromTotal(epsilon);
}

TwoRoundParams EstimatorConfig::Params() const {
  TwoRoundParams p;
  p.split = EffectiveSplit();
  p.alpha = alpha;
  p.beta = beta;
  p.mechanism = mechanism;
  p.strategy = strategy;
  p.mask = mask;
  return p;
}

double EstimatorConfig::GnamVariance() const {
  switch (kind) {
    case EstimatorKind::kTwoStar:
      return 0.0;
    case EstimatorKind::kTriOR:
      return GetEntryVariance(Mechanism(mechanism, epsilon)).sigma2;
    default: {
      const BudgetSplit s = EffectiveSplit();
      const double eps1 = mask.reduce_eps1 ? s.eps1 : s.eps0 + s.eps1 + s.eps2;
      return GetEntryVariance(Mechanism(mechanism, eps1)).sigma2;
    }
  }
}

double EstimatorConfig::LedgerTotal() const {
  const BudgetSplit s = EffectiveSplit();
  switch (kind) {
    case EstimatorKind::kTriOR:
      return epsilon;
    case EstimatorKind::kTwoStar:
      return s.eps0;
    default: {
      if (!mask.reduce_eps1) return s.eps0 + s.eps1 + s.eps2;
      double total = s.eps1;
      if (mask.apply_projection) total += s.eps0;
      if (mask.add_second_noise) total += s.eps2;
      return total;
    }
  }
}

Estimate RunEstimator(const Graph& g, const EstimatorConfig& config, std::uint64_t seed) {
  Estimate est;
  switch (config.kind) {
    case EstimatorKind::kTriOR:
      est = TriOR(g, config.epsilon, config.mechanism, config.strategy, seed);
      break;
    case EstimatorKind::kTriTR:
      est = TriTR(g, config.Params(), seed);
      break;
    case EstimatorKind::kTriMTR:
      est = TriMTR(g, config.Params(), seed);
      break;
    case EstimatorKind::kQuaTR:
      est = QuaTR(g, config.Params(), seed);
      break;
    case EstimatorKind::kTwoStar:
      est = TwoStar(g, config.EffectiveSplit().eps0, config.alpha, seed);
      break;
  }
  if (config.clip_nonnegative) est.value = std::max(est.value, 0.0);
  return est;
}

std::uint64_t TrialSeed(std::uint64_t seed, std::size_t trial) {
  return DeriveSeed(seed, Stage::kTrial, trial);
}

std::optional<TheoreticalMse> TheoreticalMseFor(const Graph& g,
                                                const EstimatorConfig& config) {
  switch (config.kind) {
    case EstimatorKind::kTriOR:
      return ComputeTheoreticalMse(config.kind, g, config.GnamVariance());
    case EstimatorKind::kTwoStar:
      return TwoStarMse(g.degrees(), config.EffectiveSplit().eps0);
    default:
      if (config.mask.apply_projection || config.mask.add_second_noise) return std::nullopt;
      return ComputeTheoreticalMse(config.kind, g, config.GnamVariance());
  }
}

namespace {

// Runs body(t) for t in [0, count) on `threads` workers and rethrows the
// failure with the smallest index.
template <typename Body>
void ParallelTrials(std::size_t count, unsigned threads, Body body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < count; t = next++) {
      try {
        body(t);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  for (std::size_t t = 0; t < count; ++t) {
    if (!errors[t]) continue;
    try {
      std::rethrow_exception(errors[t]);
    } catch (const std::exception& e) {
      throw TrialError(t, e.what());
    }
  }
}

}  // namespace

TrialReport RunTrials(const Graph& g, const EstimatorConfig& config, std::size_t trials,
                      std::uint64_t seed, unsigned threads) {
  if (trials == 0) throw DomainError("trials must be positive");
  TrialReport report;
  report.config = config;
  report.seed = seed;
  report.trials = trials;
  report.truth = ExactCount(g, Target(config.kind));
  report.values.assign(trials, 0.0);
  std::vector<ClampStats> clamps(trials);
  Estimate first;
  ParallelTrials(trials, threads, [&](std::size_t t) {
    Estimate est = RunEstimator(g, config, TrialSeed(seed, t));
    report.values[t] = est.value;
    clamps[t] = est.clamp;
    if (t == 0) first = std::move(est);
  });
  for (const ClampStats& c : clamps) report.clamp.Merge(c);
  report.stats = ComputeTrialStatistics(report.values, static_cast<double>(report.truth));
  report.theoretical = TheoreticalMseFor(g, config);
  report.cost_dl = first.download_bytes;
  report.ledger = first.ledger;
  report.trace = std::move(first.trace);
  return report;
}

JointReport RunJointTrials(const Graph& g, const TwoRoundParams& params, TriangleRoute route,
                           std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw DomainError("trials must be positive");
  JointReport report;
  report.seed = seed;
  report.trials = trials;
  report.triangles = ExactCount(g, SubgraphKind::kTriangle);
  report.quadrangles = ExactCount(g, SubgraphKind::kQuadrangle);
  report.two_stars = ExactCount(g, SubgraphKind::kTwoStar);
  std::vector<double> tri(trials), quad(trials), star(trials);
  ParallelTrials(trials, 1, [&](std::size_t t) {
    JointEstimate est = JointEstimateAll(g, params, route, TrialSeed(seed, t));
    tri[t] = est.triangle.value;
    quad[t] = est.quadrangle.value;
    star[t] = est.two_star.value;
    if (t == 0) {
      report.cost_dl = est.download_bytes;
      report.ledger = est.ledger;
    }
  });
  report.triangle = ComputeTrialStatistics(tri, static_cast<double>(report.triangles));
  report.quadrangle = ComputeTrialStatistics(quad, static_cast<double>(report.quadrangles));
  report.two_star = ComputeTrialStatistics(star, static_cast<double>(report.two_stars));
  return report;
}

TrendReport RunTrendCheck(const std::vector<Graph>& family, const EstimatorConfig& config,
                          std::size_t trials, std::uint64_t seed) {
  TrendReport report;
  std::vector<double> medians;
  bool defined = true;
  const BudgetSplit s = config.EffectiveSplit();
  for (const Graph& g : family) {
    TrendPoint point;
    point.n = g.num_nodes();
    point.average_degree = g.average_degree();
    const TrialReport r = RunTrials(g, config, trials, seed);
    point.truth = r.truth;
    point.median_re = r.stats.median_re;
    if (point.average_degree > 0 && (config.kind == EstimatorKind::kTriTR ||
                                     config.kind == EstimatorKind::kTriMTR)) {
      point.bound = ComputeReBoundShape(config.kind, point.n, point.average_degree, s.eps1,
                                        s.eps2);
    }
    if (point.median_re) {
      medians.push_back(*point.median_re);
    } else {
      defined = false;
    }
    report.points.push_back(std::move(point));
  }
  report.decreasing = defined && IsStrictlyDecreasing(medians);
  return report;
}

}  // namespace noisyadj

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

#ifndef NOISYADJ_ANALYSIS_H_
#define NOISYADJ_ANALYSIS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "noisyadj/estimators.h"
#include "noisyadj/graph.h"
#include "noisyadj/mechanisms.h"

namespace noisyadj {

// kPublished evaluates the closed forms as stated. kCorrected differs only
// for QuaTR, whose sigma^2 term uses c_ij - a_ij (d_i + d_j) / 2 in place of
// c_ij; that is the exact single-round variance.
enum class MseForm { kPublished, kCorrected };

struct MseTerm {
  std::string name;
  double value = 0;
};

struct TheoreticalMse {
  EstimatorKind estimator = EstimatorKind::kTriOR;
  double value = 0;
  std::vector<MseTerm> terms;
};

// Closed-form MSE of the noiseless-second-round estimators (TriOR and the
// two-round sums without projection or second noise) for entry variance
// sigma2, and of the unbounded 2-star estimator for budget eps0. eps0 is
// required for 2STAR and ignored otherwise. Throws DomainError when eps0
// is missing for 2STAR.
TheoreticalMse ComputeTheoreticalMse(EstimatorKind kind, const Graph& g,
                                     double sigma2,
                                     std::optional<double> eps0 = std::nullopt,
                                     MseForm form = MseForm::kPublished);

// Same, from precomputed walk sums (sum_c2 fields needed for QuaTR).
TheoreticalMse ComputeTheoreticalMse(EstimatorKind kind, const WalkSums& sums,
                                     std::size_t n, std::size_t num_edges,
                                     double sigma2, MseForm form = MseForm::kPublished);

// Closed form for 2STAR from the degree sequence.
TheoreticalMse TwoStarMse(std::span<const Count> degrees, double eps0);

struct TradeoffPoint {
  double type1 = 0;
  double type2 = 0;
};

// Optimal type II error at a given type I error for the test H0: x = 1
// against H1: x = 0 on one released bit. Laplace uses the threshold test
// "reject when 1 + noise <= kappa"; RR is the piecewise-linear curve
// through (0, 1), (q, q), (1, 0) with q = 1 / (1 + e^eps).
double Type2AtType1(const Mechanism& mech, double type1);

// resolution + 1 points evenly spaced in type1 over [0, 1]. Throws
// InvalidBudgetError for a non-finite budget and DomainError for
// resolution 0.
std::vector<TradeoffPoint> TradeoffCurve(const Mechanism& mech, std::size_t resolution);

// Threshold test point for the Laplace release at kappa.
TradeoffPoint LaplaceThresholdPoint(double epsilon, double kappa);

// Attacker guessing an adjacency bit from its release. For RR the guess is
// the report; for Laplace the guess is 1 when the release exceeds kappa.
struct AttackStrategy {
  MechanismKind mechanism = MechanismKind::kWarnerRR;
  double kappa = 1.0;

  static AttackStrategy RR() { return {MechanismKind::kWarnerRR, 0.0}; }
  static AttackStrategy LapKappa1() { return {MechanismKind::kLaplace, 1.0}; }
  static AttackStrategy LapKappa2() { return {MechanismKind::kLaplace, 0.5}; }
};

std::string ToString(const AttackStrategy& strategy);
// "rr", "lap-k1", "lap-k2".
AttackStrategy ParseAttackStrategy(std::string_view name);

// Joint cell probabilities for a bit that is 1 with probability p, plus
// the derived rates. type1 = Pr[guess 0 | x = 1], type2 = Pr[guess 1 | x = 0].
struct AttackPoint {
  double true_positive = 0;
  double false_negative = 0;
  double false_positive = 0;
  double true_negative = 0;
  double type1 = 0;
  double type2 = 0;
  double precision = 0;
  double recall = 0;
};

// Throws DomainError unless p in (0, 1), InvalidBudgetError for eps.
AttackPoint ConfusionMatrix(const AttackStrategy& strategy, double epsilon, double p);

// Empirical counterpart over `draws` bits.
AttackPoint SimulateAttack(const AttackStrategy& strategy, double epsilon, double p,
                           std::uint64_t draws, std::uint64_t seed);

// Empirical threshold test point for the Laplace release, `draws` draws
// per hypothesis.
TradeoffPoint SimulateLaplaceThreshold(double epsilon, double kappa,
                                       std::uint64_t draws, std::uint64_t seed);

// Empirical error rates of the test that attains the curve at `type1`:
// a Laplace threshold test, or for RR the report test randomized to hit
// the requested type I error.
TradeoffPoint SimulateTradeoffPoint(const Mechanism& mech, double type1,
                                    std::uint64_t draws, std::uint64_t seed);

struct TrialStatistics {
  std::size_t count = 0;
  double mean = 0;
  double mse = 0;
  // Standard error of the mean.
  double std_error = 0;
  // Relative errors |x - truth| / truth; unset when truth is 0.
  std::optional<double> mean_re;
  std::optional<double> median_re;
};

// Throws DomainError for an empty sample.
TrialStatistics ComputeTrialStatistics(std::span<const double> samples, double truth);

// Order-of-magnitude shape of the relative-error bound for TriTR or TriMTR,
// with every hidden constant set to 1.
struct ReBoundShape {
  std::vector<MseTerm> terms;
  double total = 0;
};
ReBoundShape ComputeReBoundShape(EstimatorKind kind, std::size_t n, double average_degree,
                                 double eps1, double eps2);

// True when each value is strictly below the previous one.
bool IsStrictlyDecreasing(std::span<const double> values);

}  // namespace noisyadj

#endif  // NOISYADJ_ANALYSIS_H_

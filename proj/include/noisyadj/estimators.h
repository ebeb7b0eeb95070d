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

#ifndef NOISYADJ_ESTIMATORS_H_
#define NOISYADJ_ESTIMATORS_H_

#include <cstdint>
#include <span>
#include <string_view>

#include "noisyadj/graph.h"
#include "noisyadj/matrix.h"
#include "noisyadj/mechanisms.h"
#include "noisyadj/protocol.h"

namespace noisyadj {

enum class EstimatorKind { kTriOR, kTriTR, kTriMTR, kQuaTR, kTwoStar };

std::string_view ToString(EstimatorKind kind);
EstimatorKind ParseEstimatorKind(std::string_view name);
// Subgraph an estimator targets.
SubgraphKind Target(EstimatorKind kind);

// Budget parts: eps0 projection, eps1 GNAM, eps2 second round, eps3 the
// second estimator's second round in a joint run. Parts may be +inf.
struct BudgetSplit {
  double eps0 = 0.1;
  double eps1 = 0.8;
  double eps2 = 0.1;
  double eps3 = 0.0;

  // (0.1, 0.8, 0.1) * epsilon, eps3 = 0.
  static BudgetSplit FromTotal(double epsilon);
  double Total() const { return eps0 + eps1 + eps2 + eps3; }
};

// Ablation switches for the two-round estimators.
struct StageMask {
  // false: the whole eps0 + eps1 + eps2 goes to GNAM.
  bool reduce_eps1 = true;
  // Degree projection before GNAM; also enables the clamp in round two.
  bool apply_projection = true;
  // Laplace noise on each user's second-round report.
  bool add_second_noise = true;

  // Stage 1..4 of the ablation; throws DomainError otherwise.
  static StageMask Stage(int stage);
  friend bool operator==(const StageMask&, const StageMask&) = default;
};

struct TwoRoundParams {
  BudgetSplit split;
  Count alpha = 20;
  double beta = 0.01;
  MechanismKind mechanism = MechanismKind::kWarnerRR;
  MatMulStrategy strategy;
  StageMask mask;
};

// How often the second-round clamp bound was hit.
struct ClampStats {
  std::uint64_t evaluated = 0;
  std::uint64_t clamped_high = 0;
  std::uint64_t clamped_low = 0;

  double ExceedanceFraction() const {
    return evaluated == 0 ? 0.0
                          : static_cast<double>(clamped_high + clamped_low) /
                                static_cast<double>(evaluated);
  }
  void Merge(const ClampStats& other) {
    evaluated += other.evaluated;
    clamped_high += other.clamped_high;
    clamped_low += other.clamped_low;
  }
};

struct Estimate {
  double value = 0;
  // Cost_DL of the run in bytes.
  std::uint64_t download_bytes = 0;
  BudgetLedger ledger;
  RunTrace trace;
  ClampStats clamp;
  // Variance contributed by the second-round Laplace noise, given the
  // sensitivity bounds actually used.
  double second_noise_variance = 0;
};

// clamp(x, bound) = max(min(x, bound), -bound).
double Clamp(double x, double bound, ClampStats* stats = nullptr);

// Per-user sensitivity bound of the second randomizers. For QuaTR the
// maximum degree is taken as max_noisy_degree - alpha. Throws DomainError
// for beta outside (0, 1) or estimators without a second round.
double DeltaF(EstimatorKind kind, Count noisy_degree, Count max_noisy_degree,
              std::size_t n, double sigma2, double beta, Count alpha);

// Second-round local sums before noise. `neighbors` must be sorted.
// sum over i in Nei of clamp(sum_{j in Nei, j < i} a_ij, delta_f)
double TriTrUserSum(const DenseMatrix& a_hat, std::span<const NodeId> neighbors,
                    double delta_f, ClampStats* stats = nullptr);
// sum over i in Nei of clamp(b_iu, delta_f)
double TriMtrUserSum(const DenseMatrix& b_hat, NodeId user,
                     std::span<const NodeId> neighbors, double delta_f,
                     ClampStats* stats = nullptr);
// sum over i in Nei of clamp(sum_{j in Nei, j < i} (b_ij - 1), delta_f)
double QuaTrUserSum(const DenseMatrix& b_hat, std::span<const NodeId> neighbors,
                    double delta_f, ClampStats* stats = nullptr);

// One-round triangle estimate tr(A_hat^3) / 6.
Estimate TriOR(const Graph& g, double epsilon, MechanismKind mechanism,
               const MatMulStrategy& strategy, std::uint64_t seed);

Estimate TriTR(const Graph& g, const TwoRoundParams& params, std::uint64_t seed);
Estimate TriMTR(const Graph& g, const TwoRoundParams& params, std::uint64_t seed);
Estimate QuaTR(const Graph& g, const TwoRoundParams& params, std::uint64_t seed);

// sum_u [(d~_u - alpha)(d~_u - alpha - 1) - 2 / eps0^2] from projected
// noisy degrees.
Estimate TwoStar(const Graph& g, double eps0, Count alpha, std::uint64_t seed);

// sum_u [d^_u (d^_u - 1) - 2 / eps0^2] with d^_u = d_u + Lap(1/eps0): no
// floor, clamp or offset, and exactly unbiased.
Estimate TwoStarUnbounded(const Graph& g, double eps0, std::uint64_t seed);

enum class TriangleRoute { kTriMTR, kTriTR };

struct JointEstimate {
  Estimate triangle;
  Estimate quadrangle;
  Estimate two_star;
  BudgetLedger ledger;
  RunTrace trace;
  std::uint64_t download_bytes = 0;
};

// One projection and one GNAM shared by all three counts. Users download
// B_hat once and upload a triangle report (eps2) and a quadrangle report
// (eps3). The stage mask in params is ignored; the full pipeline runs.
JointEstimate JointEstimateAll(const Graph& g, const TwoRoundParams& params,
                               TriangleRoute route, std::uint64_t seed);

}  // namespace noisyadj

#endif  // NOISYADJ_ESTIMATORS_H_

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

#include "noisyadj/estimators.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "noisyadj/error.h"
#include "noisyadj/nam.h"
#include "noisyadj/projection.h"
#include "noisyadj/rng.h"

namespace noisyadj {

std::string_view ToString(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::kTriOR:
      return "TriOR";
    case EstimatorKind::kTriTR:
      return "TriTR";
    case EstimatorKind::kTriMTR:
      return "TriMTR";
    case EstimatorKind::kQuaTR:
      return "QuaTR";
    case EstimatorKind::kTwoStar:
      return "2STAR";
  }
  return "unknown";
}

EstimatorKind ParseEstimatorKind(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "trior") return EstimatorKind::kTriOR;
  if (lower == "tritr") return EstimatorKind::kTriTR;
  if (lower == "trimtr") return EstimatorKind::kTriMTR;
  if (lower == "quatr") return EstimatorKind::kQuaTR;
  if (lower == "2star" || lower == "twostar" || lower == "two-star") {
    return EstimatorKind::kTwoStar;
  }
  throw DomainError("unknown estimator: " + std::string(name));
}

SubgraphKind Target(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::kQuaTR:
      return SubgraphKind::kQuadrangle;
    case EstimatorKind::kTwoStar:
      return SubgraphKind::kTwoStar;
    default:
      return SubgraphKind::kTriangle;
  }
}

BudgetSplit BudgetSplit::FromTotal(double epsilon) {
  CheckBudget(epsilon);
  return {0.1 * epsilon, 0.8 * epsilon, 0.1 * epsilon, 0.0};
}

StageMask StageMask::Stage(int stage) {
  switch (stage) {
    case 1:
      return {false, false, false};
    case 2:
      return {true, false, false};
    case 3:
      return {true, true, false};
    case 4:
      return {true, true, true};
    default:
      throw DomainError("stage must be 1..4");
  }
}

double Clamp(double x, double bound, ClampStats* stats) {
  if (std::isinf(bound)) return x;
  if (stats != nullptr) ++stats->evaluated;
  if (x > bound) {
    if (stats != nullptr) ++stats->clamped_high;
    return bound;
  }
  if (x < -bound) {
    if (stats != nullptr) ++stats->clamped_low;
    return -bound;
  }
  return x;
}

double DeltaF(EstimatorKind kind, Count noisy_degree, Count max_noisy_degree,
              std::size_t n, double sigma2, double beta, Count alpha) {
  if (!(beta > 0 && beta < 1)) throw DomainError("beta must lie in (0, 1)");
  const double z = NormalQuantile(1.0 - beta);
  const double d = static_cast<double>(noisy_degree);
  const double dmax_noisy = static_cast<double>(max_noisy_degree);
  const double others = static_cast<double>(n) - 2.0;
  const double sigma4 = sigma2 * sigma2;
  switch (kind) {
    case EstimatorKind::kTriTR:
      return z * std::sqrt(d * sigma2) + d;
    case EstimatorKind::kTriMTR:
      return z * std::sqrt(others * sigma4 + (d + dmax_noisy) * sigma2) + d;
    case EstimatorKind::kQuaTR: {
      const double dmax = std::max(dmax_noisy - static_cast<double>(alpha), 0.0);
      return z * std::sqrt(d * (2.0 * dmax * sigma2 + others * sigma4)) +
             d * std::max(dmax - 1.0, 0.0);
    }
    default:
      throw DomainError("estimator has no second-round randomizer");
  }
}

double TriTrUserSum(const DenseMatrix& a_hat, std::span<const NodeId> neighbors,
                    double delta_f, ClampStats* stats) {
  double sum = 0;
  for (std::size_t x = 0; x < neighbors.size(); ++x) {
    const auto row = a_hat.row(neighbors[x]);
    double inner = 0;
    for (std::size_t y = 0; y < x; ++y) inner += row[neighbors[y]];
    sum += Clamp(inner, delta_f, stats);
  }
  return sum;
}

double TriMtrUserSum(const DenseMatrix& b_hat, NodeId user,
                     std::span<const NodeId> neighbors, double delta_f,
                     ClampStats* stats) {
  double sum = 0;
  for (NodeId i : neighbors) sum += Clamp(b_hat(i, user), delta_f, stats);
  return sum;
}

double QuaTrUserSum(const DenseMatrix& b_hat, std::span<const NodeId> neighbors,
                    double delta_f, ClampStats* stats) {
  double sum = 0;
  for (std::size_t x = 0; x < neighbors.size(); ++x) {
    const auto row = b_hat.row(neighbors[x]);
    double inner = 0;
    for (std::size_t y = 0; y < x; ++y) inner += row[neighbors[y]] - 1.0;
    sum += Clamp(inner, delta_f, stats);
  }
  return sum;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t GnamUploadBytes(MechanismKind kind, std::size_t entries) {
  return kind == MechanismKind::kWarnerRR ? (entries + 7) / 8 : Float64Bytes(entries);
}

// State shared by all two-round estimators after the first round.
struct FirstRound {
  std::optional<ProjectionResult> projection;
  NoisyAdjacencyMatrix nam;
  BudgetLedger ledger;
  RunTrace trace;

  std::vector<NodeId> Neighbors(const Graph& g, NodeId u) const {
    if (projection) return projection->views[u].projected_row.members();
    auto nbrs = g.neighbors(u);
    return {nbrs.begin(), nbrs.end()};
  }
};

FirstRound RunFirstRound(const Graph& g, const TwoRoundParams& params,
                         double eps1, bool project, std::uint64_t seed) {
  const std::size_t n = g.num_nodes();
  std::optional<ProjectionResult> projection;
  BudgetLedger ledger;
  RunTrace trace;
  if (project) {
    projection = ProjectAll(g, params.split.eps0, params.alpha, seed);
    ledger.Charge("projection", params.split.eps0);
    for (std::size_t u = 0; u < n; ++u) {
      trace.Add({1, "projection", static_cast<NodeId>(u), 0, Float64Bytes(1),
                 params.split.eps0});
    }
  }
  const Mechanism mech(params.mechanism, eps1);
  NoisyAdjacencyMatrix nam = projection
                                 ? Gnam(std::span<const BitRow>(projection->Rows()), mech, seed)
                                 : Gnam(g, mech, seed);
  ledger.Charge("gnam", eps1);
  for (std::size_t u = 0; u < n; ++u) {
    trace.Add({1, "gnam", static_cast<NodeId>(u), 0,
               GnamUploadBytes(params.mechanism, u), eps1});
  }
  return {std::move(projection), std::move(nam), std::move(ledger), std::move(trace)};
}

double GnamBudget(const TwoRoundParams& params) {
  const BudgetSplit& s = params.split;
  return params.mask.reduce_eps1 ? s.eps1 : s.eps0 + s.eps1 + s.eps2;
}

void ValidateTwoRound(const TwoRoundParams& params) {
  if (params.mask.apply_projection) CheckBudget(params.split.eps0, "eps0");
  CheckBudget(GnamBudget(params), "eps1");
  if (params.mask.add_second_noise) {
    CheckBudget(params.split.eps2, "eps2");
    if (!params.mask.apply_projection) {
      throw DomainError("second-round noise needs projected noisy degrees");
    }
  }
  if (!(params.beta > 0 && params.beta < 1)) throw DomainError("beta must lie in (0, 1)");
  if (params.alpha < 0) throw DomainError("alpha must be non-negative");
}

// Lap(delta_f / eps) or 0 in the noiseless limit.
double SecondRoundNoise(double delta_f, double eps, Rng& rng) {
  if (std::isinf(eps) || delta_f <= 0) return 0.0;
  return LaplaceSample(delta_f / eps, rng);
}

double LaplaceVariance(double delta_f, double eps) {
  if (std::isinf(eps) || delta_f <= 0) return 0.0;
  const double b = delta_f / eps;
  return 2.0 * b * b;
}

enum class DownloadKind { kMatrix, kColumn };

Estimate RunTwoRound(const Graph& g, const TwoRoundParams& params,
                     EstimatorKind kind, std::uint64_t seed) {
  ValidateTwoRound(params);
  const std::size_t n = g.num_nodes();
  const double eps1 = GnamBudget(params);
  FirstRound first = RunFirstRound(g, params, eps1, params.mask.apply_projection, seed);
  const double sigma2 = first.nam.variance.sigma2;

  DenseMatrix b_hat;
  if (kind != EstimatorKind::kTriTR) b_hat = Square(first.nam, params.strategy);

  const bool noisy = params.mask.add_second_noise;
  const double eps2 = params.split.eps2;
  // Each user's report is scaled so that the expected total is
  // `divisor` times the count.
  const double report_scale = kind == EstimatorKind::kTriMTR ? 1.0 : 2.0;
  const double divisor = kind == EstimatorKind::kQuaTR ? 8.0 : 6.0;
  const std::uint64_t download =
      kind == EstimatorKind::kTriMTR ? Float64Bytes(n) : Float64Bytes(std::uint64_t{n} * n);
  const std::string stage = std::string(ToString(kind)) + "-second-round";

  Estimate est;
  double total = 0;
  for (std::size_t u = 0; u < n; ++u) {
    const auto user = static_cast<NodeId>(u);
    const std::vector<NodeId> nbrs = first.Neighbors(g, user);
    double delta_f = kInf;
    if (first.projection) {
      delta_f = DeltaF(kind, first.projection->noisy_degrees[u],
                       first.projection->max_noisy_degree, n, sigma2, params.beta,
                       params.alpha);
    }
    double sum = 0;
    switch (kind) {
      case EstimatorKind::kTriTR:
        sum = TriTrUserSum(first.nam.entries, nbrs, delta_f, &est.clamp);
        break;
      case EstimatorKind::kTriMTR:
        sum = TriMtrUserSum(b_hat, user, nbrs, delta_f, &est.clamp);
        break;
      case EstimatorKind::kQuaTR:
        sum = QuaTrUserSum(b_hat, nbrs, delta_f, &est.clamp);
        break;
      default:
        throw DomainError("not a two-round estimator");
    }
    if (noisy) {
      Rng rng(seed, Stage::kSecondRound, u);
      sum += SecondRoundNoise(delta_f, eps2, rng);
      est.second_noise_variance +=
          report_scale * report_scale * LaplaceVariance(delta_f, eps2) / (divisor * divisor);
    }
    total += report_scale * sum;
    first.trace.Add({2, stage, user, download, Float64Bytes(1), noisy ? eps2 : 0.0});
  }
  if (noisy) first.ledger.Charge("second-round", eps2);

  est.value = total / divisor;
  est.ledger = std::move(first.ledger);
  est.download_bytes = MeasureCost(first.trace, n).cost_dl;
  est.trace = std::move(first.trace);
  return est;
}

}  // namespace

Estimate TriOR(const Graph& g, double epsilon, MechanismKind mechanism,
               const MatMulStrategy& strategy, std::uint64_t seed) {
  const Mechanism mech(mechanism, epsilon);
  const std::size_t n = g.num_nodes();
  const NoisyAdjacencyMatrix nam = Gnam(g, mech, seed);
  Estimate est;
  est.value = TraceCube(nam, strategy) / 6.0;
  est.ledger.Charge("gnam", epsilon);
  for (std::size_t u = 0; u < n; ++u) {
    est.trace.Add({1, "gnam", static_cast<NodeId>(u), 0, GnamUploadBytes(mechanism, u),
                   epsilon});
  }
  est.download_bytes = MeasureCost(est.trace, n).cost_dl;
  return est;
}

Estimate TriTR(const Graph& g, const TwoRoundParams& params, std::uint64_t seed) {
  return RunTwoRound(g, params, EstimatorKind::kTriTR, seed);
}

Estimate TriMTR(const Graph& g, const TwoRoundParams& params, std::uint64_t seed) {
  return RunTwoRound(g, params, EstimatorKind::kTriMTR, seed);
}

Estimate QuaTR(const Graph& g, const TwoRoundParams& params, std::uint64_t seed) {
  return RunTwoRound(g, params, EstimatorKind::kQuaTR, seed);
}

namespace {

double TwoStarTerm(double centered, double eps0) {
  const double bias = std::isinf(eps0) ? 0.0 : 2.0 / (eps0 * eps0);
  return centered * (centered - 1.0) - bias;
}

}  // namespace

Estimate TwoStar(const Graph& g, double eps0, Count alpha, std::uint64_t seed) {
  const ProjectionResult proj = ProjectAll(g, eps0, alpha, seed);
  Estimate est;
  double total = 0;
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    total += TwoStarTerm(static_cast<double>(proj.noisy_degrees[u] - alpha), eps0);
    est.trace.Add({1, "projection", static_cast<NodeId>(u), 0, Float64Bytes(1), eps0});
  }
  est.value = total;
  est.ledger.Charge("projection", eps0);
  est.download_bytes = MeasureCost(est.trace, g.num_nodes()).cost_dl;
  return est;
}

Estimate TwoStarUnbounded(const Graph& g, double eps0, std::uint64_t seed) {
  CheckBudget(eps0, "eps0");
  Estimate est;
  double total = 0;
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    Rng rng(seed, Stage::kProjection, u);
    const double noise = std::isinf(eps0) ? 0.0 : LaplaceSample(1.0 / eps0, rng);
    total += TwoStarTerm(static_cast<double>(g.degree(static_cast<NodeId>(u))) + noise, eps0);
    est.trace.Add({1, "degree", static_cast<NodeId>(u), 0, Float64Bytes(1), eps0});
  }
  est.value = total;
  est.ledger.Charge("degree", eps0);
  est.download_bytes = MeasureCost(est.trace, g.num_nodes()).cost_dl;
  return est;
}

JointEstimate JointEstimateAll(const Graph& g, const TwoRoundParams& params,
                               TriangleRoute route, std::uint64_t seed) {
  const BudgetSplit& s = params.split;
  CheckBudget(s.eps0, "eps0");
  CheckBudget(s.eps1, "eps1");
  CheckBudget(s.eps2, "eps2");
  CheckBudget(s.eps3, "eps3");
  if (!(params.beta > 0 && params.beta < 1)) throw DomainError("beta must lie in (0, 1)");
  if (params.alpha < 0) throw DomainError("alpha must be non-negative");

  const std::size_t n = g.num_nodes();
  FirstRound first = RunFirstRound(g, params, s.eps1, /*project=*/true, seed);
  const ProjectionResult& proj = *first.projection;
  const double sigma2 = first.nam.variance.sigma2;
  const DenseMatrix b_hat = Square(first.nam, params.strategy);
  const EstimatorKind tri_kind =
      route == TriangleRoute::kTriMTR ? EstimatorKind::kTriMTR : EstimatorKind::kTriTR;
  // B_hat always; A_hat as well when triangles use the TriTR route.
  std::uint64_t download = Float64Bytes(std::uint64_t{n} * n);
  if (route == TriangleRoute::kTriTR) download *= 2;

  JointEstimate out;
  double tri_total = 0;
  double quad_total = 0;
  double star_total = 0;
  for (std::size_t u = 0; u < n; ++u) {
    const auto user = static_cast<NodeId>(u);
    const std::vector<NodeId> nbrs = first.Neighbors(g, user);
    const Count d = proj.noisy_degrees[u];

    const double df_tri = DeltaF(tri_kind, d, proj.max_noisy_degree, n, sigma2,
                                 params.beta, params.alpha);
    Rng tri_rng(seed, Stage::kSecondRound, u);
    if (route == TriangleRoute::kTriMTR) {
      const double sum = TriMtrUserSum(b_hat, user, nbrs, df_tri, &out.triangle.clamp);
      tri_total += sum + SecondRoundNoise(df_tri, s.eps2, tri_rng);
      out.triangle.second_noise_variance += LaplaceVariance(df_tri, s.eps2) / 36.0;
    } else {
      const double sum = TriTrUserSum(first.nam.entries, nbrs, df_tri, &out.triangle.clamp);
      tri_total += 2.0 * (sum + SecondRoundNoise(df_tri, s.eps2, tri_rng));
      out.triangle.second_noise_variance += 4.0 * LaplaceVariance(df_tri, s.eps2) / 36.0;
    }

    const double df_quad = DeltaF(EstimatorKind::kQuaTR, d, proj.max_noisy_degree, n,
                                  sigma2, params.beta, params.alpha);
    Rng quad_rng(seed, Stage::kSecondRoundExtra, u);
    const double qsum = QuaTrUserSum(b_hat, nbrs, df_quad, &out.quadrangle.clamp);
    quad_total += 2.0 * (qsum + SecondRoundNoise(df_quad, s.eps3, quad_rng));
    out.quadrangle.second_noise_variance += 4.0 * LaplaceVariance(df_quad, s.eps3) / 64.0;

    star_total += TwoStarTerm(static_cast<double>(d - params.alpha), s.eps0);
    first.trace.Add({2, "joint-second-round", user, download, Float64Bytes(2), s.eps2 + s.eps3});
  }
  first.ledger.Charge("triangle-second-round", s.eps2);
  first.ledger.Charge("quadrangle-second-round", s.eps3);

  out.download_bytes = MeasureCost(first.trace, n).cost_dl;
  out.triangle.value = tri_total / 6.0;
  out.quadrangle.value = quad_total / 8.0;
  out.two_star.value = star_total;
  for (Estimate* e : {&out.triangle, &out.quadrangle, &out.two_star}) {
    e->download_bytes = out.download_bytes;
    e->ledger = first.ledger;
  }
  out.ledger = std::move(first.ledger);
  out.trace = std::move(first.trace);
  return out;
}

}  // namespace noisyadj

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

#include "noisyadj/analysis.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include "noisyadj/error.h"
#include "noisyadj/rng.h"

namespace noisyadj {

namespace {

TheoreticalMse Finish(EstimatorKind kind, std::vector<MseTerm> terms) {
  TheoreticalMse out;
  out.estimator = kind;
  for (const MseTerm& t : terms) out.value += t.value;
  out.terms = std::move(terms);
  return out;
}

}  // namespace

TheoreticalMse ComputeTheoreticalMse(EstimatorKind kind, const WalkSums& sums,
                                     std::size_t n, std::size_t num_edges,
                                     double sigma2, MseForm form) {
  if (!(sigma2 >= 0)) throw DomainError("sigma2 must be non-negative");
  const double s2 = sigma2;
  const double s4 = s2 * s2;
  const double s6 = s4 * s2;
  const double nn = static_cast<double>(n);
  const double others = std::max(nn - 2.0, 0.0);
  const double edges = static_cast<double>(num_edges);
  switch (kind) {
    case EstimatorKind::kTriOR:
      return Finish(kind, {{"sigma2", s2 * sums.sum_b2_upper},
                           {"sigma4", s4 * others * edges},
                           {"sigma6", s6 * nn * (nn - 1.0) * others / 6.0}});
    case EstimatorKind::kTriTR:
      return Finish(kind, {{"sigma2", s2 * sums.sum_b2_upper / 9.0}});
    case EstimatorKind::kTriMTR:
      return Finish(kind, {{"sigma2", 4.0 * s2 * sums.sum_b2_upper / 9.0},
                           {"sigma4", s4 * others * edges / 9.0}});
    case EstimatorKind::kQuaTR: {
      const double c2 = form == MseForm::kPublished ? sums.sum_c2_upper
                                                    : sums.sum_c2_corrected_upper;
      return Finish(kind, {{"sigma2", s2 * c2 / 4.0},
                           {"sigma4", others * s4 * sums.sum_b2_upper / 16.0}});
    }
    case EstimatorKind::kTwoStar:
      throw DomainError("2STAR closed form needs degrees and eps0");
  }
  throw DomainError("unsupported estimator");
}

TheoreticalMse TwoStarMse(std::span<const Count> degrees, double eps0) {
  CheckBudget(eps0, "eps0");
  if (std::isinf(eps0)) {
    return Finish(EstimatorKind::kTwoStar, {{"degree", 0}, {"linear", 0}, {"quartic", 0}});
  }
  double sum_d2 = 0;
  double sum_d = 0;
  for (Count d : degrees) {
    sum_d2 += static_cast<double>(d) * static_cast<double>(d);
    sum_d += static_cast<double>(d);
  }
  const double e2 = eps0 * eps0;
  const double nn = static_cast<double>(degrees.size());
  // 16 |E| = 8 * sum of degrees.
  return Finish(EstimatorKind::kTwoStar, {{"degree", 8.0 * (sum_d2 - sum_d) / e2},
                                          {"linear", 2.0 * nn / e2},
                                          {"quartic", 20.0 * nn / (e2 * e2)}});
}

TheoreticalMse ComputeTheoreticalMse(EstimatorKind kind, const Graph& g, double sigma2,
                                     std::optional<double> eps0, MseForm form) {
  if (kind == EstimatorKind::kTwoStar) {
    if (!eps0) throw DomainError("2STAR closed form needs eps0");
    return TwoStarMse(g.degrees(), *eps0);
  }
  const WalkSums sums = ComputeWalkSums(g, kind == EstimatorKind::kQuaTR);
  return ComputeTheoreticalMse(kind, sums, g.num_nodes(), g.edges().size(), sigma2, form);
}

namespace {

void CheckFinite(const Mechanism& mech) {
  if (!std::isfinite(mech.epsilon())) {
    throw InvalidBudgetError("trade-off curves need a finite epsilon");
  }
}

}  // namespace

TradeoffPoint LaplaceThresholdPoint(double epsilon, double kappa) {
  CheckBudget(epsilon);
  const double scale = 1.0 / epsilon;
  return {LaplaceCdf(kappa - 1.0, scale), 1.0 - LaplaceCdf(kappa, scale)};
}

double Type2AtType1(const Mechanism& mech, double type1) {
  CheckFinite(mech);
  if (!(type1 >= 0 && type1 <= 1)) throw DomainError("type1 must lie in [0, 1]");
  if (type1 == 0) return 1.0;
  if (type1 == 1) return 0.0;
  const double eps = mech.epsilon();
  if (mech.kind() == MechanismKind::kLaplace) {
    const double scale = 1.0 / eps;
    const double kappa = 1.0 + LaplaceQuantile(type1, scale);
    return 1.0 - LaplaceCdf(kappa, scale);
  }
  const double q = 1.0 / (1.0 + std::exp(eps));
  if (type1 <= q) return 1.0 - type1 * (1.0 - q) / q;
  return q * (1.0 - type1) / (1.0 - q);
}

std::vector<TradeoffPoint> TradeoffCurve(const Mechanism& mech, std::size_t resolution) {
  CheckFinite(mech);
  if (resolution == 0) throw DomainError("resolution must be positive");
  std::vector<TradeoffPoint> curve;
  curve.reserve(resolution + 1);
  for (std::size_t k = 0; k <= resolution; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(resolution);
    curve.push_back({t, Type2AtType1(mech, t)});
  }
  return curve;
}

std::string ToString(const AttackStrategy& strategy) {
  if (strategy.mechanism == MechanismKind::kWarnerRR) return "rr";
  if (strategy.kappa == 1.0) return "lap-k1";
  if (strategy.kappa == 0.5) return "lap-k2";
  return "lap-k" + std::to_string(strategy.kappa);
}

AttackStrategy ParseAttackStrategy(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "rr") return AttackStrategy::RR();
  if (lower == "lap-k1" || lower == "lap-kappa1") return AttackStrategy::LapKappa1();
  if (lower == "lap-k2" || lower == "lap-kappa2") return AttackStrategy::LapKappa2();
  throw DomainError("unknown attack strategy: " + std::string(name));
}

namespace {

AttackPoint FromCells(double tp, double fn, double fp, double tn) {
  AttackPoint a{tp, fn, fp, tn, 0, 0, 0, 0};
  a.recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
  a.type1 = 1.0 - a.recall;
  a.type2 = fp + tn > 0 ? fp / (fp + tn) : 0.0;
  a.precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
  return a;
}

void CheckAttackArgs(double epsilon, double p) {
  CheckBudget(epsilon);
  if (!(p > 0 && p < 1)) throw DomainError("edge density must lie in (0, 1)");
}

}  // namespace

AttackPoint ConfusionMatrix(const AttackStrategy& strategy, double epsilon, double p) {
  CheckAttackArgs(epsilon, p);
  double hit1 = 0;  // Pr[guess 1 | x = 1]
  double hit0 = 0;  // Pr[guess 1 | x = 0]
  if (strategy.mechanism == MechanismKind::kWarnerRR) {
    hit1 = RrKeepProbability(epsilon);
    hit0 = 1.0 - hit1;
  } else {
    const double scale = 1.0 / epsilon;
    hit1 = 1.0 - LaplaceCdf(strategy.kappa - 1.0, scale);
    hit0 = 1.0 - LaplaceCdf(strategy.kappa, scale);
  }
  return FromCells(p * hit1, p * (1.0 - hit1), (1.0 - p) * hit0, (1.0 - p) * (1.0 - hit0));
}

AttackPoint SimulateAttack(const AttackStrategy& strategy, double epsilon, double p,
                           std::uint64_t draws, std::uint64_t seed) {
  CheckAttackArgs(epsilon, p);
  if (draws == 0) throw DomainError("draws must be positive");
  Rng rng(seed, Stage::kTest, 0);
  std::uint64_t cells[2][2] = {{0, 0}, {0, 0}};
  for (std::uint64_t k = 0; k < draws; ++k) {
    const bool x = rng.Bernoulli(p);
    bool guess = false;
    if (strategy.mechanism == MechanismKind::kWarnerRR) {
      guess = RrPerturb(x, epsilon, rng);
    } else {
      guess = (x ? 1.0 : 0.0) + LaplaceSample(1.0 / epsilon, rng) > strategy.kappa;
    }
    ++cells[x ? 1 : 0][guess ? 1 : 0];
  }
  const double total = static_cast<double>(draws);
  return FromCells(cells[1][1] / total, cells[1][0] / total, cells[0][1] / total,
                   cells[0][0] / total);
}

TradeoffPoint SimulateLaplaceThreshold(double epsilon, double kappa, std::uint64_t draws,
                                       std::uint64_t seed) {
  CheckBudget(epsilon);
  if (draws == 0) throw DomainError("draws must be positive");
  Rng rng(seed, Stage::kTest, 1);
  const double scale = 1.0 / epsilon;
  std::uint64_t rejected = 0;
  std::uint64_t accepted = 0;
  for (std::uint64_t k = 0; k < draws; ++k) {
    if (1.0 + LaplaceSample(scale, rng) <= kappa) ++rejected;
    if (LaplaceSample(scale, rng) > kappa) ++accepted;
  }
  const double total = static_cast<double>(draws);
  return {rejected / total, accepted / total};
}

TradeoffPoint SimulateTradeoffPoint(const Mechanism& mech, double type1,
                                    std::uint64_t draws, std::uint64_t seed) {
  CheckFinite(mech);
  if (!(type1 >= 0 && type1 <= 1)) throw DomainError("type1 must lie in [0, 1]");
  if (draws == 0) throw DomainError("draws must be positive");
  const double eps = mech.epsilon();
  if (mech.kind() == MechanismKind::kLaplace) {
    if (type1 == 0) return {0.0, 1.0};
    if (type1 == 1) return {1.0, 0.0};
    return SimulateLaplaceThreshold(eps, 1.0 + LaplaceQuantile(type1, 1.0 / eps), draws, seed);
  }
  const double q = 1.0 / (1.0 + std::exp(eps));
  Rng rng(seed, Stage::kTest, 2);
  // Reject H0 (guess x = 0) given the report.
  auto reject = [&](bool report) {
    const double coin = rng.Uniform();
    if (type1 <= q) return !report && coin < type1 / q;
    return !report || coin < (type1 - q) / (1.0 - q);
  };
  std::uint64_t rejected = 0;
  std::uint64_t accepted = 0;
  for (std::uint64_t k = 0; k < draws; ++k) {
    if (reject(RrPerturb(true, eps, rng))) ++rejected;
    if (!reject(RrPerturb(false, eps, rng))) ++accepted;
  }
  const double total = static_cast<double>(draws);
  return {rejected / total, accepted / total};
}

TrialStatistics ComputeTrialStatistics(std::span<const double> samples, double truth) {
  if (samples.empty()) throw DomainError("no samples");
  TrialStatistics s;
  s.count = samples.size();
  const double count = static_cast<double>(s.count);
  double sum = 0;
  double sq = 0;
  for (double x : samples) {
    sum += x;
    sq += (x - truth) * (x - truth);
  }
  s.mean = sum / count;
  s.mse = sq / count;
  if (s.count > 1) {
    double var = 0;
    for (double x : samples) var += (x - s.mean) * (x - s.mean);
    var /= count - 1.0;
    s.std_error = std::sqrt(var / count);
  }
  if (truth != 0) {
    std::vector<double> re;
    re.reserve(s.count);
    for (double x : samples) re.push_back(std::abs(x - truth) / std::abs(truth));
    double re_sum = 0;
    for (double r : re) re_sum += r;
    s.mean_re = re_sum / count;
    std::sort(re.begin(), re.end());
    const std::size_t mid = re.size() / 2;
    s.median_re = re.size() % 2 == 1 ? re[mid] : 0.5 * (re[mid - 1] + re[mid]);
  }
  return s;
}

ReBoundShape ComputeReBoundShape(EstimatorKind kind, std::size_t n, double average_degree,
                                 double eps1, double eps2) {
  if (!(average_degree > 0)) throw DomainError("average degree must be positive");
  if (n == 0) throw DomainError("empty graph");
  const double d = average_degree;
  const double root_n = std::sqrt(static_cast<double>(n));
  ReBoundShape out;
  switch (kind) {
    case EstimatorKind::kTriTR:
      out.terms = {{"first-round", 1.0 / (eps1 * d)},
                   {"cross", 1.0 / (eps1 * eps2 * root_n * std::pow(d, 1.5))},
                   {"second-noise", 1.0 / (eps2 * root_n * d)}};
      break;
    case EstimatorKind::kTriMTR:
      out.terms = {{"first-round", 1.0 / (eps1 * d)},
                   {"square", 1.0 / (eps1 * eps1 * std::pow(d, 1.5))},
                   {"second-noise-variance", 1.0 / (eps1 * eps1 * eps2 * d * d)},
                   {"second-noise", 1.0 / (eps2 * root_n * d)}};
      break;
    default:
      throw DomainError("relative-error bound defined for TriTR and TriMTR only");
  }
  for (const MseTerm& t : out.terms) out.total += t.value;
  return out;
}

bool IsStrictlyDecreasing(std::span<const double> values) {
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (!(values[k] < values[k - 1])) return false;
  }
  return true;
}

}  // namespace noisyadj

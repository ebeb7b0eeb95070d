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

#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "noisyadj/analysis.h"
#include "noisyadj/error.h"
#include "noisyadj/graph.h"
#include "noisyadj/mechanisms.h"
#include "oracles.h"

namespace noisyadj {
namespace {

Graph Complete(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, edges);
}

TEST(TheoreticalMseTest, HandEvaluations) {
  const TheoreticalMse k3 = ComputeTheoreticalMse(EstimatorKind::kTriOR, Complete(3), 1.0);
  EXPECT_DOUBLE_EQ(k3.value, 7.0);
  ASSERT_EQ(k3.terms.size(), 3u);
  EXPECT_DOUBLE_EQ(k3.terms[0].value, 3.0);
  EXPECT_DOUBLE_EQ(k3.terms[1].value, 3.0);
  EXPECT_DOUBLE_EQ(k3.terms[2].value, 1.0);
  const std::vector<Count> isolated = {0};
  const double eps0 = 0.7;
  EXPECT_NEAR(TwoStarMse(isolated, eps0).value,
              2 / (eps0 * eps0) + 20 / std::pow(eps0, 4), 1e-12);
  EXPECT_THROW(ComputeTheoreticalMse(EstimatorKind::kTwoStar, Complete(3), 1.0), DomainError);
}

TEST(TheoreticalMseTest, CoefficientIdentities) {
  const Graph g = ErdosRenyi(30, 0.3, 2);
  const double s2 = 0.9206;
  const auto tri_or = ComputeTheoreticalMse(EstimatorKind::kTriOR, g, s2);
  const auto tri_tr = ComputeTheoreticalMse(EstimatorKind::kTriTR, g, s2);
  const auto tri_mtr = ComputeTheoreticalMse(EstimatorKind::kTriMTR, g, s2);
  EXPECT_NEAR(tri_tr.terms[0].value * 9, tri_or.terms[0].value, 1e-9 * tri_or.value);
  EXPECT_NEAR(tri_mtr.terms[0].value, 4 * tri_tr.terms[0].value, 1e-9 * tri_mtr.value);
  EXPECT_NEAR(tri_mtr.terms[1].value * 9, tri_or.terms[1].value, 1e-9 * tri_or.value);
  for (const auto& mse : {tri_or, tri_tr, tri_mtr}) {
    double sum = 0;
    for (const MseTerm& t : mse.terms) {
      EXPECT_GE(t.value, 0);
      sum += t.value;
    }
    EXPECT_DOUBLE_EQ(sum, mse.value);
  }
}

TEST(TheoreticalMseTest, FrobeniusForms) {
  // sigma^2 term of TriOR is half the squared Frobenius norm of A^2 off
  // the diagonal; the sigma^4 term is (n - 2) times half of ||A||_F^2.
  const Graph g = ErdosRenyi(25, 0.3, 4);
  const IntMatrix b = TwoStepCounts(g);
  double off_diag = 0;
  for (std::size_t i = 0; i < 25; ++i)
    for (std::size_t j = 0; j < 25; ++j)
      if (i != j) off_diag += static_cast<double>(b(i, j) * b(i, j));
  const auto mse = ComputeTheoreticalMse(EstimatorKind::kTriOR, g, 1.0);
  EXPECT_DOUBLE_EQ(mse.terms[0].value, off_diag / 2);
  EXPECT_DOUBLE_EQ(mse.terms[1].value, 23.0 * static_cast<double>(2 * g.num_edges()) / 2);
}

class ExactVarianceTest : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(ExactVarianceTest, ClosedFormsAgainstCoefficientEnumeration) {
  const std::uint64_t seed = GetParam();
  const std::size_t n = 9;
  const Graph g = ErdosRenyi(n, 0.45, seed);
  const oracle::Matrix a = oracle::Adjacency(g);
  const double s2 = GetEntryVariance(Mechanism(MechanismKind::kWarnerRR, 1.0)).sigma2;
  auto rel = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-12); };

  const double v_or = oracle::ExactVariance(a, s2, 3, oracle::TriOrValue);
  EXPECT_LT(rel(ComputeTheoreticalMse(EstimatorKind::kTriOR, g, s2).value, v_or), 1e-9);

  const double v_tr = oracle::ExactVariance(
      a, s2, 1, [&](const oracle::Matrix& m) { return oracle::TriTrValue(g, m); });
  EXPECT_LT(rel(ComputeTheoreticalMse(EstimatorKind::kTriTR, g, s2).value, v_tr), 1e-9);

  const double v_mtr = oracle::ExactVariance(
      a, s2, 2, [&](const oracle::Matrix& m) { return oracle::TriMtrValue(g, m); });
  EXPECT_LT(rel(ComputeTheoreticalMse(EstimatorKind::kTriMTR, g, s2).value, v_mtr), 1e-9);

  const double v_qua = oracle::ExactVariance(
      a, s2, 2, [&](const oracle::Matrix& m) { return oracle::QuaTrValue(g, m); });
  EXPECT_LT(rel(ComputeTheoreticalMse(EstimatorKind::kQuaTR, g, s2, std::nullopt,
                                      MseForm::kCorrected).value,
                v_qua),
            1e-9);
  // The published QuaTR form overstates the linear term.
  EXPECT_GT(ComputeTheoreticalMse(EstimatorKind::kQuaTR, g, s2).value, v_qua * (1 + 1e-6));
}

INSTANTIATE_TEST_SUITE_P(RandomGraphs, ExactVarianceTest, ::testing::Values(1u, 2u, 3u));

TEST(TradeoffTest, RrInflectionAndLaplaceKappaHalf) {
  const Mechanism rr(MechanismKind::kWarnerRR, 1.0);
  const double q = 1 / (1 + std::exp(1.0));
  EXPECT_NEAR(q, 0.2689, 1e-4);
  EXPECT_NEAR(Type2AtType1(rr, q), q, 1e-12);
  const TradeoffPoint lap = LaplaceThresholdPoint(1.0, 0.5);
  EXPECT_NEAR(lap.type1, 1 / (2 * std::exp(0.5)), 1e-12);
  EXPECT_NEAR(lap.type2, 1 / (2 * std::exp(0.5)), 1e-12);
  EXPECT_NEAR(lap.type1, 0.3033, 1e-4);
  const Mechanism laplace(MechanismKind::kLaplace, 1.0);
  EXPECT_NEAR(Type2AtType1(laplace, lap.type1), lap.type2, 1e-12);
}

TEST(TradeoffTest, CurveShape) {
  for (MechanismKind kind : {MechanismKind::kWarnerRR, MechanismKind::kLaplace}) {
    for (double eps : {0.1, 1.0, 2.0}) {
      const auto curve = TradeoffCurve(Mechanism(kind, eps), 1000);
      ASSERT_EQ(curve.size(), 1001u);
      EXPECT_EQ(curve.front().type1, 0.0);
      EXPECT_EQ(curve.front().type2, 1.0);
      EXPECT_EQ(curve.back().type1, 1.0);
      EXPECT_EQ(curve.back().type2, 0.0);
      for (std::size_t k = 1; k < curve.size(); ++k) {
        EXPECT_LE(curve[k].type2, curve[k - 1].type2 + 1e-15);
      }
    }
  }
  EXPECT_THROW(TradeoffCurve(Mechanism(MechanismKind::kWarnerRR, 1.0), 0), DomainError);
  EXPECT_THROW(TradeoffCurve(Mechanism(MechanismKind::kWarnerRR,
                                       std::numeric_limits<double>::infinity()),
                             10),
               InvalidBudgetError);
}

TEST(TradeoffTest, RrBelowLaplace) {
  const auto rr = TradeoffCurve(Mechanism(MechanismKind::kWarnerRR, 1.0), 1000);
  const auto lap = TradeoffCurve(Mechanism(MechanismKind::kLaplace, 1.0), 1000);
  for (std::size_t k = 0; k < rr.size(); ++k) EXPECT_LE(rr[k].type2, lap[k].type2 + 1e-12);
}

TEST(ConfusionMatrixTest, TableCells) {
  const double eps = 1.0, p = 0.1;
  const double e = std::exp(eps), h = std::exp(0.5 * eps);
  const AttackPoint rr = ConfusionMatrix(AttackStrategy::RR(), eps, p);
  EXPECT_NEAR(rr.recall, e / (e + 1), 1e-12);
  EXPECT_NEAR(rr.recall, 0.7311, 1e-4);
  EXPECT_NEAR(rr.precision, p * e / (1 - p + p * e), 1e-12);
  const AttackPoint k1 = ConfusionMatrix(AttackStrategy::LapKappa1(), eps, p);
  EXPECT_NEAR(k1.true_positive, p / 2, 1e-12);
  EXPECT_NEAR(k1.false_negative, p / 2, 1e-12);
  EXPECT_NEAR(k1.false_positive, (1 - p) / (2 * e), 1e-12);
  EXPECT_NEAR(k1.true_negative, (1 - p) * (2 * e - 1) / (2 * e), 1e-12);
  EXPECT_NEAR(k1.recall, 0.5, 1e-12);
  const AttackPoint k2 = ConfusionMatrix(AttackStrategy::LapKappa2(), eps, p);
  EXPECT_NEAR(k2.true_positive, p * (2 * h - 1) / (2 * h), 1e-12);
  EXPECT_NEAR(k2.false_positive, (1 - p) / (2 * h), 1e-12);
  EXPECT_NEAR(k2.recall, (2 * h - 1) / (2 * h), 1e-12);
  EXPECT_NEAR(k2.precision, (2 * p * h - p) / (1 - 2 * p + 2 * p * h), 1e-12);
  EXPECT_THROW(ConfusionMatrix(AttackStrategy::RR(), eps, 0.0), DomainError);
  EXPECT_THROW(ConfusionMatrix(AttackStrategy::RR(), 0.0, 0.5), InvalidBudgetError);
}

TEST(ConfusionMatrixTest, PrecisionAndRecallRelations) {
  for (double eps = 0.1; eps <= 2.0; eps += 0.1) {
    EXPECT_NEAR(ConfusionMatrix(AttackStrategy::LapKappa1(), eps, 0.5).recall, 0.5, 1e-12);
    for (double p : {0.001, 0.01, 0.1, 0.5}) {
      EXPECT_NEAR(ConfusionMatrix(AttackStrategy::RR(), eps, p).precision,
                  ConfusionMatrix(AttackStrategy::LapKappa1(), eps, p).precision, 1e-12);
      EXPECT_GT(ConfusionMatrix(AttackStrategy::LapKappa2(), eps, p).recall,
                ConfusionMatrix(AttackStrategy::LapKappa1(), eps, p).recall);
    }
  }
}

TEST(ConfusionMatrixTest, MonteCarloAgreement) {
  const std::uint64_t draws = 1000000;
  for (const AttackStrategy& s :
       {AttackStrategy::RR(), AttackStrategy::LapKappa1(), AttackStrategy::LapKappa2()}) {
    const AttackPoint exact = ConfusionMatrix(s, 1.0, 0.3);
    const AttackPoint mc = SimulateAttack(s, 1.0, 0.3, draws, 17);
    const double cells[4][2] = {{exact.true_positive, mc.true_positive},
                                {exact.false_negative, mc.false_negative},
                                {exact.false_positive, mc.false_positive},
                                {exact.true_negative, mc.true_negative}};
    for (const auto& c : cells) {
      EXPECT_NEAR(c[1], c[0], 3 * std::sqrt(c[0] * (1 - c[0]) / draws)) << ToString(s);
    }
  }
  const TradeoffPoint exact = LaplaceThresholdPoint(1.0, 0.5);
  const TradeoffPoint mc = SimulateLaplaceThreshold(1.0, 0.5, draws, 3);
  EXPECT_NEAR(mc.type1, exact.type1, 3 * std::sqrt(exact.type1 * (1 - exact.type1) / draws));
  EXPECT_NEAR(mc.type2, exact.type2, 3 * std::sqrt(exact.type2 * (1 - exact.type2) / draws));
}

TEST(TradeoffTest, MonteCarloAgreement) {
  const std::uint64_t draws = 400000;
  for (MechanismKind kind : {MechanismKind::kWarnerRR, MechanismKind::kLaplace}) {
    const Mechanism mech(kind, 1.0);
    for (double t : {0.05, 0.2689, 0.5, 0.9}) {
      const TradeoffPoint mc = SimulateTradeoffPoint(mech, t, draws, 7);
      const double t2 = Type2AtType1(mech, t);
      EXPECT_NEAR(mc.type1, t, 4 * std::sqrt(t * (1 - t) / draws));
      EXPECT_NEAR(mc.type2, t2, 4 * std::sqrt(t2 * (1 - t2) / draws) + 1e-12);
    }
  }
}

TEST(TrialStatisticsTest, Basics) {
  const std::vector<double> exact = {10.0};
  const TrialStatistics s = ComputeTrialStatistics(exact, 10.0);
  EXPECT_EQ(s.mse, 0.0);
  EXPECT_EQ(*s.median_re, 0.0);
  const std::vector<double> pair = {9.0, 11.0};
  const TrialStatistics t = ComputeTrialStatistics(pair, 10.0);
  EXPECT_DOUBLE_EQ(t.mse, 1.0);
  EXPECT_DOUBLE_EQ(t.mean, 10.0);
  EXPECT_DOUBLE_EQ(*t.mean_re, 0.1);
  EXPECT_DOUBLE_EQ(t.std_error, 1.0);
  const TrialStatistics z = ComputeTrialStatistics(pair, 0.0);
  EXPECT_FALSE(z.median_re.has_value());
  EXPECT_FALSE(z.mean_re.has_value());
  EXPECT_THROW(ComputeTrialStatistics(std::vector<double>{}, 1.0), DomainError);
  const std::vector<double> odd = {1.0, 5.0, 2.0};
  EXPECT_DOUBLE_EQ(*ComputeTrialStatistics(odd, 2.0).median_re, 0.5);
}

TEST(ReBoundTest, ShapesShrinkWithDensity) {
  const auto sparse = ComputeReBoundShape(EstimatorKind::kTriTR, 200, 10, 0.8, 0.1);
  const auto dense = ComputeReBoundShape(EstimatorKind::kTriTR, 200, 20, 0.8, 0.1);
  EXPECT_LT(dense.total, sparse.total);
  EXPECT_EQ(ComputeReBoundShape(EstimatorKind::kTriMTR, 100, 5, 1, 1).terms.size(), 4u);
  EXPECT_THROW(ComputeReBoundShape(EstimatorKind::kQuaTR, 100, 5, 1, 1), DomainError);
  const std::vector<double> down = {3, 2, 1}, flat = {3, 3, 1};
  EXPECT_TRUE(IsStrictlyDecreasing(down));
  EXPECT_FALSE(IsStrictlyDecreasing(flat));
}

}  // namespace
}  // namespace noisyadj

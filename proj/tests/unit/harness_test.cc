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

#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "noisyadj/error.h"
#include "noisyadj/harness.h"
#include "noisyadj/protocol.h"

namespace noisyadj {
namespace {

TEST(BudgetLedgerTest, AppendsAndTotals) {
  BudgetLedger ledger;
  ledger.Charge("a", 0.1);
  ledger.Charge("b", 0.8);
  ledger.Charge("c", 0.0);
  EXPECT_NEAR(ledger.total(), 0.9, 1e-15);
  ASSERT_EQ(ledger.charges().size(), 3u);
  EXPECT_EQ(ledger.charges()[1].stage, "b");
  EXPECT_THROW(ledger.Charge("d", -0.1), InvalidBudgetError);
}

TEST(CostMeterTest, MaxOverUsersOfRoundSums) {
  RunTrace trace;
  trace.Add({1, "x", 0, 10, 0, 1.0});
  trace.Add({2, "y", 0, 5, 0, 1.0});
  trace.Add({2, "y", 1, 12, 0, 1.0});
  const CostMeter meter = MeasureCost(trace, 3);
  EXPECT_EQ(trace.rounds(), 2);
  EXPECT_EQ(meter.cost_dl, 15u);
  EXPECT_EQ(meter.per_round_download[1][1], 12u);
  EXPECT_EQ(MeasureCost(RunTrace{}, 4).cost_dl, 0u);
}

TEST(RunTraceTest, JsonLines) {
  const Graph g = ErdosRenyi(5, 0.5, 1);
  TwoRoundParams p;
  const Estimate e = TriMTR(g, p, 1);
  std::ostringstream out;
  e.trace.WriteJsonLines(out);
  std::istringstream in(out.str());
  std::string line;
  int rows = 0, second_round = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    ++rows;
    if (j["round"] == 2) {
      ++second_round;
      EXPECT_EQ(j["download_bytes"], 40);
    }
  }
  EXPECT_EQ(second_round, 5);
  EXPECT_EQ(rows, 15);
}

EstimatorConfig Config(EstimatorKind kind, double eps = 1.0) {
  EstimatorConfig c;
  c.kind = kind;
  c.epsilon = eps;
  return c;
}

TEST(HarnessTest, DeterministicAcrossThreadCounts) {
  const Graph g = ErdosRenyi(40, 0.25, 3);
  for (EstimatorKind kind : {EstimatorKind::kTriOR, EstimatorKind::kTriMTR, EstimatorKind::kTwoStar}) {
    const TrialReport a = RunTrials(g, Config(kind), 12, 5, 1);
    const TrialReport b = RunTrials(g, Config(kind), 12, 5, 3);
    EXPECT_EQ(a.values, b.values);
    EXPECT_EQ(a.stats.mse, b.stats.mse);
    EXPECT_NE(a.values, RunTrials(g, Config(kind), 12, 6, 1).values);
  }
}

TEST(HarnessTest, ReportAccounting) {
  const Graph g = ErdosRenyi(30, 0.3, 4);
  const TrialReport mtr = RunTrials(g, Config(EstimatorKind::kTriMTR, 2.0), 3, 1);
  EXPECT_EQ(mtr.cost_dl, 8u * 30u);
  EXPECT_NEAR(mtr.ledger.total(), 2.0, 1e-12);
  EXPECT_FALSE(mtr.theoretical.has_value());
  EXPECT_EQ(mtr.truth, ExactCount(g, SubgraphKind::kTriangle));
  const TrialReport tor = RunTrials(g, Config(EstimatorKind::kTriOR), 3, 1);
  ASSERT_TRUE(tor.theoretical.has_value());
  EXPECT_EQ(tor.cost_dl, 0u);
  EstimatorConfig stage1 = Config(EstimatorKind::kQuaTR);
  stage1.mask = StageMask::Stage(1);
  EXPECT_TRUE(RunTrials(g, stage1, 2, 1).theoretical.has_value());
  EXPECT_TRUE(RunTrials(g, Config(EstimatorKind::kTwoStar), 2, 1).theoretical.has_value());
  EXPECT_NEAR(Config(EstimatorKind::kTwoStar, 0.5).LedgerTotal(), 0.5, 1e-15);
}

TEST(HarnessTest, ClipNonNegative) {
  const std::vector<Edge> none = {{0, 1}};
  const Graph g(30, none);
  EstimatorConfig c = Config(EstimatorKind::kTriOR, 0.5);
  const TrialReport raw = RunTrials(g, c, 30, 2);
  c.clip_nonnegative = true;
  const TrialReport clipped = RunTrials(g, c, 30, 2);
  bool any_negative = false;
  for (std::size_t k = 0; k < raw.values.size(); ++k) {
    any_negative |= raw.values[k] < 0;
    EXPECT_EQ(clipped.values[k], std::max(raw.values[k], 0.0));
  }
  EXPECT_TRUE(any_negative);
  EXPECT_FALSE(raw.stats.median_re.has_value());
}

TEST(HarnessTest, ErrorsCarryTrialIndex) {
  const Graph g = ErdosRenyi(10, 0.3, 1);
  EstimatorConfig c = Config(EstimatorKind::kTriTR);
  c.alpha = -1;
  try {
    RunTrials(g, c, 4, 1);
    FAIL();
  } catch (const TrialError& e) {
    EXPECT_EQ(e.trial(), 0u);
    EXPECT_NE(std::string(e.what()).find("trial 0"), std::string::npos);
  }
  EXPECT_THROW(RunTrials(g, Config(EstimatorKind::kTriOR), 0, 1), DomainError);
}

TEST(HarnessTest, JointReport) {
  const Graph g = ErdosRenyi(30, 0.3, 5);
  TwoRoundParams p;
  p.split = {0.1, 0.8, 0.1, 0.1};
  const JointReport r = RunJointTrials(g, p, TriangleRoute::kTriMTR, 3, 1);
  EXPECT_NEAR(r.ledger.total(), 1.1, 1e-12);
  EXPECT_EQ(r.cost_dl, 8u * 30u * 30u);
  EXPECT_EQ(r.triangle.count, 3u);
}

TEST(TrendTest, TriangleFreeGraphIsUndefined) {
  // Complete bipartite K_{5,5} has no triangles.
  std::vector<Edge> edges;
  for (NodeId i = 0; i < 5; ++i)
    for (NodeId j = 5; j < 10; ++j) edges.emplace_back(i, j);
  const std::vector<Graph> family = {Graph(10, edges)};
  const TrendReport r = RunTrendCheck(family, Config(EstimatorKind::kTriTR), 3, 1);
  ASSERT_EQ(r.points.size(), 1u);
  EXPECT_FALSE(r.points[0].median_re.has_value());
  EXPECT_FALSE(r.decreasing);
}

TEST(TrendTest, TriMtrSecondNoiseTermSlope) {
  // With p fixed, doubling n should shrink the second-noise relative error
  // like the bound shape does, within a factor of two.
  const double p = 0.2;
  std::vector<double> measured, predicted;
  for (std::size_t n : {100u, 200u}) {
    const Graph g = ErdosRenyi(n, p, n);
    const double truth = static_cast<double>(ExactCount(g, SubgraphKind::kTriangle));
    EstimatorConfig c = Config(EstimatorKind::kTriMTR);
    const Estimate e = RunEstimator(g, c, 1);
    measured.push_back(std::sqrt(e.second_noise_variance) / truth);
    const ReBoundShape shape =
        ComputeReBoundShape(EstimatorKind::kTriMTR, n, g.average_degree(), 0.8, 0.1);
    predicted.push_back(shape.terms[2].value + shape.terms[3].value);
  }
  const double ratio = (measured[1] / measured[0]) / (predicted[1] / predicted[0]);
  EXPECT_GT(ratio, 0.5);
  EXPECT_LT(ratio, 2.0);
}

}  // namespace
}  // namespace noisyadj

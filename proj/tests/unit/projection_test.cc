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

#include "noisyadj/error.h"
#include "noisyadj/graph.h"
#include "noisyadj/projection.h"
#include "noisyadj/rng.h"

namespace noisyadj {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(GraphProjectionTest, EmptyRow) {
  Rng rng(1);
  const BitRow row(10);
  for (int k = 0; k < 200; ++k) {
    const ProjectedView v = GraphProjection(0, row, 0, 0.5, 20, rng);
    EXPECT_GE(v.noisy_degree, 20);
    EXPECT_EQ(v.projected_row.count(), 0u);
    EXPECT_EQ(v.removed, 0);
  }
}

TEST(GraphProjectionTest, NoiselessLimit) {
  Rng rng(2);
  BitRow row(10);
  for (int i = 1; i <= 5; ++i) row.set(i);
  const ProjectedView v = GraphProjection(0, row, 5, kInf, 20, rng);
  EXPECT_EQ(v.noisy_degree, 25);
  EXPECT_EQ(v.projected_row, row);
  EXPECT_THROW(GraphProjection(0, row, 5, 0.0, 20, rng), InvalidBudgetError);
  EXPECT_THROW(GraphProjection(0, row, 5, 1.0, -1, rng), DomainError);
}

TEST(GraphProjectionTest, ViewInvariants) {
  const Graph g = ErdosRenyi(60, 0.3, 3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ProjectionResult r = ProjectAll(g, 0.05, 2, seed);
    Count max_seen = 0;
    for (NodeId u = 0; u < 60; ++u) {
      const ProjectedView& v = r.views[u];
      EXPECT_GE(v.noisy_degree, 2);
      EXPECT_TRUE(v.projected_row.IsSubsetOf(g.row(u)));
      EXPECT_EQ(static_cast<Count>(v.projected_row.count()),
                std::min(g.degree(u), v.noisy_degree));
      EXPECT_EQ(v.removed, g.degree(u) - static_cast<Count>(v.projected_row.count()));
      EXPECT_EQ(r.noisy_degrees[u], v.noisy_degree);
      max_seen = std::max(max_seen, v.noisy_degree);
    }
    EXPECT_EQ(r.max_noisy_degree, max_seen);
  }
}

TEST(GraphProjectionTest, NoiselessProjectAllIsIdentity) {
  const Graph g = ErdosRenyi(40, 0.2, 4);
  const ProjectionResult r = ProjectAll(g, kInf, 20, 1);
  EXPECT_EQ(r.max_noisy_degree, g.max_degree() + 20);
  for (NodeId u = 0; u < 40; ++u) {
    EXPECT_EQ(r.noisy_degrees[u], g.degree(u) + 20);
    EXPECT_EQ(r.views[u].projected_row, g.row(u));
  }
}

TEST(GraphProjectionTest, RemovalProbabilityAboveAlpha) {
  // For d > alpha an edge is removed exactly when the noise falls below
  // -alpha, which has probability exp(-alpha * eps0) / 2.
  BitRow row(40);
  for (int i = 1; i <= 30; ++i) row.set(i);
  const double eps0 = 0.2;
  const Count alpha = 5;
  const int draws = 200000;
  int removed = 0;
  for (int k = 0; k < draws; ++k) {
    Rng rng(9, Stage::kProjection, k);
    removed += GraphProjection(0, row, 30, eps0, alpha, rng).removed > 0;
  }
  const double p = 0.5 * std::exp(-static_cast<double>(alpha) * eps0);
  EXPECT_NEAR(removed / static_cast<double>(draws), p, 4 * std::sqrt(p * (1 - p) / draws));
}

TEST(GraphProjectionTest, NoRemovalAtOrBelowAlpha) {
  BitRow row(30);
  for (int i = 1; i <= 20; ++i) row.set(i);
  for (int k = 0; k < 20000; ++k) {
    Rng rng(10, Stage::kProjection, k);
    EXPECT_EQ(GraphProjection(0, row, 20, 0.1, 20, rng).removed, 0);
  }
}

TEST(GraphProjectionTest, RemovedSetIsUniform) {
  // Star on 10 nodes: center 0 with leaves 1..9.
  BitRow row(10);
  for (int i = 1; i < 10; ++i) row.set(i);
  std::vector<double> hits(10, 0.0);
  double total = 0;
  for (int k = 0; k < 100000; ++k) {
    Rng rng(11, Stage::kProjection, k);
    const ProjectedView v = GraphProjection(0, row, 9, 0.3, 0, rng);
    for (int i = 1; i < 10; ++i) {
      if (!v.projected_row.test(i)) {
        hits[i] += 1;
        total += 1;
      }
    }
  }
  ASSERT_GT(total, 1000);
  const double expected = total / 9.0;
  double chi2 = 0;
  for (int i = 1; i < 10; ++i) chi2 += (hits[i] - expected) * (hits[i] - expected) / expected;
  // 99.9% quantile of chi-square with 8 degrees of freedom.
  EXPECT_LT(chi2, 26.12);
}

TEST(GraphProjectionTest, OffsetDegreeIsUnbiasedWhenNothingBinds) {
  BitRow row(300);
  for (int i = 1; i <= 200; ++i) row.set(i);
  const int draws = 100000;
  double sum = 0;
  for (int k = 0; k < draws; ++k) {
    Rng rng(12, Stage::kProjection, k);
    sum += static_cast<double>(GraphProjection(0, row, 200, 5.0, 20, rng).noisy_degree - 20);
  }
  // The floor lowers the mean by 1/2 on average.
  EXPECT_NEAR(sum / draws, 200.0 - 0.5, 0.02);
}

}  // namespace
}  // namespace noisyadj

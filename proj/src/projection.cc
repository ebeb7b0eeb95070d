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
#include "noisyadj/projection.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "noisyadj/error.h"
#include "noisyadj/mechanisms.h"

namespace noisyadj {

ProjectedView GraphProjection(NodeId user, const BitRow& row, Count degree,
                              double eps0, Count alpha, Rng& rng) {
  CheckBudget(eps0, "eps0");
  if (alpha < 0) throw DomainError("alpha must be non-negative");
  const double noise = std::isinf(eps0) ? 0.0 : LaplaceSample(1.0 / eps0, rng);
  const double noisy =
      static_cast<double>(alpha) + std::max(static_cast<double>(degree) + noise, 0.0);
  ProjectedView view;
  view.user = user;
  view.noisy_degree = static_cast<Count>(std::floor(noisy));
  view.original_degree = degree;
  view.projected_row = row;
  if (view.noisy_degree < degree) {
    std::vector<NodeId> nbrs = row.members();
    const std::size_t drop = static_cast<std::size_t>(degree - view.noisy_degree);
    // Partial Fisher-Yates: the first drop slots become a uniform sample.
    for (std::size_t k = 0; k < drop; ++k) {
      const std::size_t pick = k + static_cast<std::size_t>(rng.Below(nbrs.size() - k));
      std::swap(nbrs[k], nbrs[pick]);
      view.projected_row.reset(nbrs[k]);
    }
    view.removed = static_cast<Count>(drop);
  }
  return view;
}

std::vector<BitRow> ProjectionResult::Rows() const {
  std::vector<BitRow> rows;
  rows.reserve(views.size());
  for (const auto& v : views) rows.push_back(v.projected_row);
  return rows;
}

ProjectionResult ProjectAll(const Graph& g, double eps0, Count alpha,
                            std::uint64_t seed) {
  ProjectionResult result;
  const std::size_t n = g.num_nodes();
  result.views.reserve(n);
  result.noisy_degrees.reserve(n);
  for (std::size_t u = 0; u < n; ++u) {
    Rng rng(seed, Stage::kProjection, u);
    const auto id = static_cast<NodeId>(u);
    result.views.push_back(GraphProjection(id, g.row(id), g.degree(id), eps0, alpha, rng));
    result.noisy_degrees.push_back(result.views.back().noisy_degree);
  }
  result.max_noisy_degree =
      *std::max_element(result.noisy_degrees.begin(), result.noisy_degrees.end());
  return result;
}

}  // namespace noisyadj

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
#ifndef NOISYADJ_PROJECTION_H_
#define NOISYADJ_PROJECTION_H_

#include <cstdint>
#include <vector>

#include "noisyadj/graph.h"
#include "noisyadj/rng.h"

namespace noisyadj {

// One user's view after degree projection.
struct ProjectedView {
  NodeId user = 0;
  BitRow projected_row;
  // floor(alpha + max(d + Lap(1/eps0), 0)); always >= alpha.
  Count noisy_degree = 0;
  Count original_degree = 0;
  Count removed = 0;
};

// Computes the noisy degree and, when it falls below the true degree,
// removes (d - noisy_degree) neighbors chosen uniformly without replacement.
// eps0 = +inf gives noisy_degree = d + alpha with no removal.
ProjectedView GraphProjection(NodeId user, const BitRow& row, Count degree,
                              double eps0, Count alpha, Rng& rng);

struct ProjectionResult {
  std::vector<ProjectedView> views;
  // Collector-visible noisy degrees and their maximum.
  std::vector<Count> noisy_degrees;
  Count max_noisy_degree = 0;

  // Projected rows in user order, the input GNAM consumes.
  std::vector<BitRow> Rows() const;
};

// Runs GraphProjection for every user with stream (seed, kProjection, u).
ProjectionResult ProjectAll(const Graph& g, double eps0, Count alpha,
                            std::uint64_t seed);

}  // namespace noisyadj

#endif  // NOISYADJ_PROJECTION_H_

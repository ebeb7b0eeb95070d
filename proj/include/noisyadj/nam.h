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
#ifndef NOISYADJ_NAM_H_
#define NOISYADJ_NAM_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "noisyadj/graph.h"
#include "noisyadj/matrix.h"
#include "noisyadj/mechanisms.h"

namespace noisyadj {

// Symmetric, zero-diagonal matrix of independent unbiased estimates of the
// adjacency entries. RR entries are stored already unbiased.
struct NoisyAdjacencyMatrix {
  DenseMatrix entries;
  Mechanism mechanism;
  EntryVariance variance;

  std::size_t n() const { return entries.n; }
  double operator()(std::size_t i, std::size_t j) const { return entries(i, j); }
};

// Columns each user perturbed and uploaded, for protocol audits.
struct UploadTrace {
  std::vector<std::vector<NodeId>> columns;
};

// One-round NAM generation. User u perturbs only the entries (u, i) with
// i < u of its own row, drawing from the stream (seed, kGnam, u). The
// collector mirrors every upload into the upper triangle.
NoisyAdjacencyMatrix Gnam(std::span<const BitRow> rows, const Mechanism& mech,
                          std::uint64_t seed, UploadTrace* trace = nullptr);
NoisyAdjacencyMatrix Gnam(const Graph& g, const Mechanism& mech,
                          std::uint64_t seed, UploadTrace* trace = nullptr);

// B = A_hat * A_hat.
DenseMatrix Square(const NoisyAdjacencyMatrix& nam, const MatMulStrategy& strategy);

// tr(A_hat^3), accumulated panel by panel without forming A_hat^3.
double TraceCube(const NoisyAdjacencyMatrix& nam, const MatMulStrategy& strategy);

// Debug dump: uint64 n followed by n*n little-endian float64 entries.
void WriteNamBinary(const DenseMatrix& m, std::ostream& out);
DenseMatrix ReadNamBinary(std::istream& in);

}  // namespace noisyadj

#endif  // NOISYADJ_NAM_H_

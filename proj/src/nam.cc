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
#include "noisyadj/nam.h"

#include <algorithm>
#include <bit>
#include <cstring>

#include "noisyadj/error.h"
#include "noisyadj/rng.h"

namespace noisyadj {

NoisyAdjacencyMatrix Gnam(std::span<const BitRow> rows, const Mechanism& mech,
                          std::uint64_t seed, UploadTrace* trace) {
  const std::size_t n = rows.size();
  DenseMatrix a(n);
  if (trace != nullptr) trace->columns.assign(n, {});
  for (std::size_t u = 0; u < n; ++u) {
    Rng rng(seed, Stage::kGnam, u);
    const BitRow& row = rows[u];
    double* out = a.data.data() + u * n;
    std::vector<NodeId>* cols = trace != nullptr ? &trace->columns[u] : nullptr;
    for (std::size_t i = 0; i < u; ++i) {
      out[i] = ReleaseEntry(mech, row.test(i), rng);
      if (cols != nullptr) cols->push_back(static_cast<NodeId>(i));
    }
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t i = 0; i < u; ++i) a(i, u) = a(u, i);
  }
  return {std::move(a), mech, GetEntryVariance(mech)};
}

NoisyAdjacencyMatrix Gnam(const Graph& g, const Mechanism& mech,
                          std::uint64_t seed, UploadTrace* trace) {
  return Gnam(std::span<const BitRow>(g.rows()), mech, seed, trace);
}

DenseMatrix Square(const NoisyAdjacencyMatrix& nam, const MatMulStrategy& strategy) {
  return Multiply(nam.entries, nam.entries, strategy);
}

double TraceCube(const NoisyAdjacencyMatrix& nam, const MatMulStrategy& strategy) {
  const std::size_t n = nam.n();
  const std::size_t panel_rows = std::max<std::size_t>(256, strategy.block);
  std::vector<double> panel(std::min(panel_rows, n) * n);
  double trace = 0;
  for (std::size_t r0 = 0; r0 < n; r0 += panel_rows) {
    const std::size_t r1 = std::min(n, r0 + panel_rows);
    MultiplyRows(nam.entries, r0, r1, nam.entries, strategy, panel);
    for (std::size_t i = r0; i < r1; ++i) {
      // (A^2 A)_ii = sum_j (A^2)_ij a_ji and a_ji = a_ij.
      const double* b_row = panel.data() + (i - r0) * n;
      const double* a_row = nam.entries.data.data() + i * n;
      double s = 0;
      for (std::size_t j = 0; j < n; ++j) s += b_row[j] * a_row[j];
      trace += s;
    }
  }
  return trace;
}

void WriteNamBinary(const DenseMatrix& m, std::ostream& out) {
  static_assert(std::endian::native == std::endian::little,
                "binary dump assumes a little-endian host");
  const std::uint64_t n = m.n;
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  out.write(reinterpret_cast<const char*>(m.data.data()),
            static_cast<std::streamsize>(m.data.size() * sizeof(double)));
}

DenseMatrix ReadNamBinary(std::istream& in) {
  std::uint64_t n = 0;
  if (!in.read(reinterpret_cast<char*>(&n), sizeof(n))) {
    throw Error("truncated matrix header");
  }
  DenseMatrix m(static_cast<std::size_t>(n));
  if (!in.read(reinterpret_cast<char*>(m.data.data()),
               static_cast<std::streamsize>(m.data.size() * sizeof(double)))) {
    throw Error("truncated matrix body");
  }
  return m;
}

}  // namespace noisyadj

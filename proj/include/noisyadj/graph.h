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
#ifndef NOISYADJ_GRAPH_H_
#define NOISYADJ_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace noisyadj {

using NodeId = std::uint32_t;
using Count = std::int64_t;
using Edge = std::pair<NodeId, NodeId>;

// Fixed-size set of node ids backed by 64-bit words.
class BitRow {
 public:
  BitRow() = default;
  explicit BitRow(std::size_t size) : size_(size), words_((size + 63) / 64) {}

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) {
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  std::size_t count() const;

  // Set members in increasing order.
  std::vector<NodeId> members() const;

  // True when every member of *this is also a member of other.
  bool IsSubsetOf(const BitRow& other) const;

  friend bool operator==(const BitRow&, const BitRow&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// Immutable simple undirected graph on nodes 0..n-1.
class Graph {
 public:
  // Builds a graph from an edge list. Orientation and duplicates are
  // collapsed; self-loops and out-of-range ids are rejected.
  Graph(std::size_t num_nodes, std::span<const Edge> edges);

  std::size_t num_nodes() const { return rows_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  // Edges as (i, j) with i < j, sorted lexicographically.
  const std::vector<Edge>& edges() const { return edges_; }
  const BitRow& row(NodeId u) const { return rows_[u]; }
  const std::vector<BitRow>& rows() const { return rows_; }
  // Sorted neighbor ids of u.
  std::span<const NodeId> neighbors(NodeId u) const {
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }
  Count degree(NodeId u) const {
    return static_cast<Count>(offsets_[u + 1] - offsets_[u]);
  }
  const std::vector<Count>& degrees() const { return degrees_; }
  Count max_degree() const;
  double average_degree() const;
  bool has_edge(NodeId i, NodeId j) const { return rows_[i].test(j); }

 private:
  std::vector<Edge> edges_;
  std::vector<BitRow> rows_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<Count> degrees_;
};

enum class SubgraphKind { kTriangle, kQuadrangle, kTwoStar };

std::string_view ToString(SubgraphKind kind);
// Accepts "triangle", "quadrangle" and "two-star" (also "2star", "two_star").
SubgraphKind ParseSubgraphKind(std::string_view name);

struct ParsedEdgeList {
  Graph graph;
  // original_ids[v] is the id that node v carried in the input text.
  std::vector<std::int64_t> original_ids;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicate_edges = 0;
};

// Reads a SNAP-style edge list: two integer tokens per line, '#' comments,
// blank lines ignored. Node ids are remapped to 0..n-1 in order of first
// appearance. Throws ParseError on malformed lines or an empty graph.
ParsedEdgeList ParseEdgeList(std::istream& in);
ParsedEdgeList ParseEdgeList(std::string_view text);
ParsedEdgeList LoadEdgeList(const std::string& path);

// One "i j" line per edge, i < j, in edges() order.
std::string SerializeEdgeList(const Graph& g);

// Exact subgraph counts. Triangles use oriented adjacency intersection,
// quadrangles the closed 4-walk correction, 2-stars the ordered-pair
// convention sum_u d_u (d_u - 1).
Count ExactCount(const Graph& g, SubgraphKind kind);

// Direct enumeration over vertex triples / 4-subsets / centers. Refuses
// graphs with more than kBruteForceMaxNodes nodes.
inline constexpr std::size_t kBruteForceMaxNodes = 64;
Count ExactCountBruteForce(const Graph& g, SubgraphKind kind);

// Dense row-major n x n integer matrix.
struct IntMatrix {
  std::size_t n = 0;
  std::vector<std::int64_t> data;

  std::int64_t operator()(std::size_t i, std::size_t j) const {
    return data[i * n + j];
  }
  std::int64_t& operator()(std::size_t i, std::size_t j) {
    return data[i * n + j];
  }
};

// B = A^2, b_ij = number of length-2 walks from i to j.
IntMatrix TwoStepCounts(const Graph& g);
// C = A^3.
IntMatrix ThreeStepCounts(const Graph& g);
// Squared Frobenius norm of an integer matrix.
double FrobeniusNormSquared(const IntMatrix& m);

// Aggregates of the walk-count matrices that the closed-form MSE
// expressions need, computed without dense n x n storage.
struct WalkSums {
  // sum over i < j of b_ij^2.
  double sum_b2_upper = 0;
  // sum over i < j of c_ij^2 (only when requested).
  double sum_c2_upper = 0;
  // sum over i < j of (c_ij - a_ij (d_i + d_j) / 2)^2 (only when requested).
  double sum_c2_corrected_upper = 0;
  // tr(A^3) and tr(A^4).
  Count trace_a3 = 0;
  Count trace_a4 = 0;
};
WalkSums ComputeWalkSums(const Graph& g, bool with_three_step);

// G(n, p) sample; deterministic for a given seed.
Graph ErdosRenyi(std::size_t n, double p, std::uint64_t seed);

// G(n, m): exactly m distinct uniformly random edges.
Graph RandomGraphWithEdges(std::size_t n, std::size_t m, std::uint64_t seed);

}  // namespace noisyadj

#endif  // NOISYADJ_GRAPH_H_

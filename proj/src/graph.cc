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
#include "noisyadj/graph.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "noisyadj/error.h"
#include "noisyadj/rng.h"

namespace noisyadj {

std::size_t BitRow::count() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::vector<NodeId> BitRow::members() const {
  std::vector<NodeId> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      const int b = std::countr_zero(bits);
      out.push_back(static_cast<NodeId>(w * 64 + static_cast<std::size_t>(b)));
      bits &= bits - 1;
    }
  }
  return out;
}

bool BitRow::IsSubsetOf(const BitRow& other) const {
  if (other.size_ != size_) return false;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

Graph::Graph(std::size_t num_nodes, std::span<const Edge> edges) {
  if (num_nodes == 0) throw DomainError("graph must have at least one node");
  edges_.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a >= num_nodes || b >= num_nodes) {
      throw DomainError("edge endpoint out of range");
    }
    if (a == b) throw DomainError("self-loops are not allowed");
    edges_.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  rows_.assign(num_nodes, BitRow(num_nodes));
  degrees_.assign(num_nodes, 0);
  for (auto [a, b] : edges_) {
    rows_[a].set(b);
    rows_[b].set(a);
    ++degrees_[a];
    ++degrees_[b];
  }
  offsets_.assign(num_nodes + 1, 0);
  for (std::size_t u = 0; u < num_nodes; ++u) {
    offsets_[u + 1] = offsets_[u] + static_cast<std::size_t>(degrees_[u]);
  }
  adjacency_.resize(offsets_[num_nodes]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (auto [a, b] : edges_) {
    adjacency_[fill[a]++] = b;
    adjacency_[fill[b]++] = a;
  }
  for (std::size_t u = 0; u < num_nodes; ++u) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[u]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[u + 1]));
  }
}

Count Graph::max_degree() const {
  return *std::max_element(degrees_.begin(), degrees_.end());
}

double Graph::average_degree() const {
  return 2.0 * static_cast<double>(edges_.size()) /
         static_cast<double>(rows_.size());
}

std::string_view ToString(SubgraphKind kind) {
  switch (kind) {
    case SubgraphKind::kTriangle:
      return "triangle";
    case SubgraphKind::kQuadrangle:
      return "quadrangle";
    case SubgraphKind::kTwoStar:
      return "two-star";
  }
  return "unknown";
}

SubgraphKind ParseSubgraphKind(std::string_view name) {
  if (name == "triangle") return SubgraphKind::kTriangle;
  if (name == "quadrangle" || name == "4-cycle") return SubgraphKind::kQuadrangle;
  if (name == "two-star" || name == "2star" || name == "two_star" ||
      name == "2-star") {
    return SubgraphKind::kTwoStar;
  }
  throw DomainError("unknown subgraph kind: " + std::string(name));
}

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

// Splits off the next whitespace-delimited token; empty when exhausted.
std::string_view NextToken(std::string_view& rest) {
  std::size_t b = 0;
  while (b < rest.size() && IsSpace(rest[b])) ++b;
  std::size_t e = b;
  while (e < rest.size() && !IsSpace(rest[e])) ++e;
  std::string_view tok = rest.substr(b, e - b);
  rest.remove_prefix(e);
  return tok;
}

std::int64_t ParseId(std::string_view tok, std::size_t line) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("invalid node id '" + std::string(tok) + "'", line);
  }
  if (value < 0) throw ParseError("negative node id", line);
  return value;
}

}  // namespace

ParsedEdgeList ParseEdgeList(std::istream& in) {
  std::unordered_map<std::int64_t, NodeId> remap;
  std::vector<std::int64_t> original;
  std::vector<Edge> edges;
  std::size_t self_loops = 0;
  auto intern = [&](std::int64_t id) -> NodeId {
    auto [it, inserted] = remap.try_emplace(id, static_cast<NodeId>(original.size()));
    if (inserted) original.push_back(id);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    std::string_view first = NextToken(rest);
    if (first.empty() || first.front() == '#') continue;
    std::string_view second = NextToken(rest);
    if (second.empty()) throw ParseError("expected two node ids", line_no);
    std::string_view extra = NextToken(rest);
    if (!extra.empty() && extra.front() != '#') {
      throw ParseError("unexpected trailing token '" + std::string(extra) + "'",
                       line_no);
    }
    const std::int64_t a = ParseId(first, line_no);
    const std::int64_t b = ParseId(second, line_no);
    const NodeId u = intern(a);
    const NodeId v = intern(b);
    if (u == v) {
      ++self_loops;
      continue;
    }
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  if (original.empty()) throw ParseError("edge list contains no nodes", line_no);

  const std::size_t raw = edges.size();
  Graph g(original.size(), edges);
  const std::size_t dups = raw - g.num_edges();
  return ParsedEdgeList{std::move(g), std::move(original), self_loops, dups};
}

ParsedEdgeList ParseEdgeList(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParseEdgeList(in);
}

ParsedEdgeList LoadEdgeList(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open edge list '" + path + "'");
  return ParseEdgeList(in);
}

std::string SerializeEdgeList(const Graph& g) {
  std::string out;
  for (auto [a, b] : g.edges()) {
    out += std::to_string(a);
    out += ' ';
    out += std::to_string(b);
    out += '\n';
  }
  return out;
}

namespace {

Count CountTriangles(const Graph& g) {
  // Orient each edge from lower to higher (degree, id) rank and intersect
  // forward neighbor lists.
  const std::size_t n = g.num_nodes();
  auto before = [&](NodeId a, NodeId b) {
    return g.degree(a) < g.degree(b) || (g.degree(a) == g.degree(b) && a < b);
  };
  std::vector<std::vector<NodeId>> forward(n);
  for (auto [a, b] : g.edges()) {
    if (before(a, b)) {
      forward[a].push_back(b);
    } else {
      forward[b].push_back(a);
    }
  }
  for (auto& f : forward) std::sort(f.begin(), f.end());
  Count total = 0;
  for (std::size_t u = 0; u < n; ++u) {
    for (NodeId v : forward[u]) {
      const auto& fu = forward[u];
      const auto& fv = forward[v];
      std::size_t i = 0, j = 0;
      while (i < fu.size() && j < fv.size()) {
        if (fu[i] < fv[j]) {
          ++i;
        } else if (fv[j] < fu[i]) {
          ++j;
        } else {
          ++total;
          ++i;
          ++j;
        }
      }
    }
  }
  return total;
}

Count CountTwoStars(const Graph& g) {
  Count total = 0;
  for (Count d : g.degrees()) total += d * (d - 1);
  return total;
}

// Calls fn(i, row) for every node i with row[j] = b_ij, reusing one buffer.
template <typename Fn>
void ForEachTwoStepRow(const Graph& g, Fn&& fn) {
  const std::size_t n = g.num_nodes();
  std::vector<std::int64_t> row(n, 0);
  std::vector<NodeId> touched;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId k : g.neighbors(i)) {
      for (NodeId j : g.neighbors(k)) {
        if (row[j] == 0) touched.push_back(j);
        ++row[j];
      }
    }
    fn(i, std::span<const std::int64_t>(row), std::span<const NodeId>(touched));
    for (NodeId j : touched) row[j] = 0;
    touched.clear();
  }
}

Count TraceA4(const Graph& g) {
  Count total = 0;
  ForEachTwoStepRow(g, [&](NodeId, std::span<const std::int64_t> row,
                           std::span<const NodeId> touched) {
    for (NodeId j : touched) total += row[j] * row[j];
  });
  return total;
}

Count CountQuadrangles(const Graph& g) {
  Count sum_d2 = 0;
  for (Count d : g.degrees()) sum_d2 += d * d;
  const Count m = static_cast<Count>(g.num_edges());
  return (TraceA4(g) - 2 * sum_d2 + 2 * m) / 8;
}

}  // namespace

Count ExactCount(const Graph& g, SubgraphKind kind) {
  switch (kind) {
    case SubgraphKind::kTriangle:
      return CountTriangles(g);
    case SubgraphKind::kQuadrangle:
      return CountQuadrangles(g);
    case SubgraphKind::kTwoStar:
      return CountTwoStars(g);
  }
  return 0;
}

Count ExactCountBruteForce(const Graph& g, SubgraphKind kind) {
  const std::size_t n = g.num_nodes();
  if (n > kBruteForceMaxNodes) {
    throw SizeLimitError("brute-force enumeration refused for n=" +
                         std::to_string(n) + " (limit " +
                         std::to_string(kBruteForceMaxNodes) + ")");
  }
  auto e = [&](std::size_t a, std::size_t b) {
    return g.has_edge(static_cast<NodeId>(a), static_cast<NodeId>(b));
  };
  Count total = 0;
  switch (kind) {
    case SubgraphKind::kTriangle:
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
          for (std::size_t c = b + 1; c < n; ++c)
            if (e(a, b) && e(b, c) && e(a, c)) ++total;
      break;
    case SubgraphKind::kQuadrangle:
      // A 4-subset {a,b,c,d} supports three distinct Hamiltonian cycles.
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
          for (std::size_t c = b + 1; c < n; ++c)
            for (std::size_t d = c + 1; d < n; ++d) {
              if (e(a, b) && e(b, c) && e(c, d) && e(d, a)) ++total;
              if (e(a, b) && e(b, d) && e(d, c) && e(c, a)) ++total;
              if (e(a, c) && e(c, b) && e(b, d) && e(d, a)) ++total;
            }
      break;
    case SubgraphKind::kTwoStar:
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if (i != j && e(u, i) && e(u, j)) ++total;
      break;
  }
  return total;
}

IntMatrix TwoStepCounts(const Graph& g) {
  const std::size_t n = g.num_nodes();
  IntMatrix b{n, std::vector<std::int64_t>(n * n, 0)};
  ForEachTwoStepRow(g, [&](NodeId i, std::span<const std::int64_t> row,
                           std::span<const NodeId> touched) {
    for (NodeId j : touched) b(i, j) = row[j];
  });
  return b;
}

IntMatrix ThreeStepCounts(const Graph& g) {
  const IntMatrix b = TwoStepCounts(g);
  const std::size_t n = g.num_nodes();
  IntMatrix c{n, std::vector<std::int64_t>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t bik = b(i, k);
      if (bik == 0) continue;
      for (NodeId j : g.neighbors(static_cast<NodeId>(k))) c(i, j) += bik;
    }
  }
  return c;
}

double FrobeniusNormSquared(const IntMatrix& m) {
  double total = 0;
  for (std::int64_t v : m.data) total += static_cast<double>(v) * static_cast<double>(v);
  return total;
}

WalkSums ComputeWalkSums(const Graph& g, bool with_three_step) {
  const std::size_t n = g.num_nodes();
  WalkSums sums;
  std::vector<std::int64_t> c_row(n, 0);
  std::vector<NodeId> c_touched;
  const auto& deg = g.degrees();
  ForEachTwoStepRow(g, [&](NodeId i, std::span<const std::int64_t> row,
                           std::span<const NodeId> touched) {
    for (NodeId j : touched) {
      const double bij = static_cast<double>(row[j]);
      sums.trace_a4 += row[j] * row[j];
      if (j > i) sums.sum_b2_upper += bij * bij;
    }
    for (NodeId j : g.neighbors(i)) sums.trace_a3 += row[j];
    if (!with_three_step) return;
    // c_ij = sum_k b_ik a_kj.
    for (NodeId k : touched) {
      for (NodeId j : g.neighbors(k)) {
        if (c_row[j] == 0) c_touched.push_back(j);
        c_row[j] += row[k];
      }
    }
    for (NodeId j : c_touched) {
      if (j <= i) continue;
      const double cij = static_cast<double>(c_row[j]);
      sums.sum_c2_upper += cij * cij;
      double corrected = cij;
      if (g.has_edge(i, j)) corrected -= 0.5 * static_cast<double>(deg[i] + deg[j]);
      sums.sum_c2_corrected_upper += corrected * corrected;
    }
    for (NodeId j : c_touched) c_row[j] = 0;
    c_touched.clear();
  });
  return sums;
}

Graph ErdosRenyi(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed, Stage::kTest, n);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.Bernoulli(p)) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    }
  }
  return Graph(n, edges);
}

Graph RandomGraphWithEdges(std::size_t n, std::size_t m, std::uint64_t seed) {
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (m > pairs) throw DomainError("too many edges requested");
  Rng rng(seed, Stage::kTest, n ^ (m << 20));
  std::vector<Edge> edges;
  edges.reserve(m);
  std::vector<BitRow> seen(n, BitRow(n));
  while (edges.size() < m) {
    const auto a = static_cast<NodeId>(rng.Below(n));
    const auto b = static_cast<NodeId>(rng.Below(n));
    if (a == b || seen[a].test(b)) continue;
    seen[a].set(b);
    seen[b].set(a);
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  return Graph(n, edges);
}

}  // namespace noisyadj

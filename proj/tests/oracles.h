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

// Independent reference implementations used only by the tests.

#ifndef NOISYADJ_TESTS_ORACLES_H_
#define NOISYADJ_TESTS_ORACLES_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "noisyadj/graph.h"

namespace noisyadj::oracle {

using Matrix = std::vector<std::vector<double>>;

inline Matrix Adjacency(const Graph& g) {
  const std::size_t n = g.num_nodes();
  Matrix a(n, std::vector<double>(n, 0.0));
  for (const auto& [i, j] : g.edges()) a[i][j] = a[j][i] = 1.0;
  return a;
}

inline Matrix Product(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix c(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline std::int64_t Triangles(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::int64_t t = 0;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      for (NodeId k = j + 1; k < n; ++k)
        if (g.has_edge(i, j) && g.has_edge(j, k) && g.has_edge(i, k)) ++t;
  return t;
}

// 4-cycles: each 4-set carries up to three distinct cycles.
inline std::int64_t Quadrangles(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::int64_t q = 0;
  auto cycle = [&](NodeId a, NodeId b, NodeId c, NodeId d) {
    return g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d) && g.has_edge(d, a);
  };
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b)
      for (NodeId c = b + 1; c < n; ++c)
        for (NodeId d = c + 1; d < n; ++d)
          q += cycle(a, b, c, d) + cycle(a, b, d, c) + cycle(a, c, b, d);
  return q;
}

// Ordered neighbor pairs around each center.
inline std::int64_t TwoStars(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::int64_t s = 0;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = 0; j < n; ++j)
        if (i != j && i != u && j != u && g.has_edge(u, i) && g.has_edge(u, j)) ++s;
  return s;
}

// Exact variance of f(A + X) where X is symmetric with zero diagonal and
// independent zero-mean entries of variance sigma2 above the diagonal, for
// f multilinear in those entries of total degree <= max_degree. Monomial
// coefficients come from Moebius inversion over unit perturbations.
inline double ExactVariance(const Matrix& a, double sigma2, int max_degree,
                            const std::function<double(const Matrix&)>& f) {
  const std::size_t n = a.size();
  std::vector<std::pair<std::size_t, std::size_t>> vars;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) vars.emplace_back(i, j);
  Matrix work = a;
  auto eval = [&](const std::vector<std::size_t>& on) {
    for (std::size_t v : on) {
      work[vars[v].first][vars[v].second] += 1.0;
      work[vars[v].second][vars[v].first] += 1.0;
    }
    const double y = f(work);
    for (std::size_t v : on) {
      work[vars[v].first][vars[v].second] -= 1.0;
      work[vars[v].second][vars[v].first] -= 1.0;
    }
    return y;
  };
  const std::size_t m = vars.size();
  const double f0 = eval({});
  std::vector<double> f1(m);
  for (std::size_t v = 0; v < m; ++v) f1[v] = eval({v});
  double variance = 0;
  for (std::size_t v = 0; v < m; ++v) {
    const double c = f1[v] - f0;
    variance += c * c * sigma2;
  }
  if (max_degree < 2) return variance;
  std::vector<double> f2(m * m, 0.0);
  for (std::size_t v = 0; v < m; ++v) {
    for (std::size_t w = v + 1; w < m; ++w) {
      f2[v * m + w] = eval({v, w});
      const double c = f2[v * m + w] - f1[v] - f1[w] + f0;
      variance += c * c * sigma2 * sigma2;
    }
  }
  if (max_degree < 3) return variance;
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t v = u + 1; v < m; ++v) {
      for (std::size_t w = v + 1; w < m; ++w) {
        const double c = eval({u, v, w}) - f2[u * m + v] - f2[u * m + w] -
                         f2[v * m + w] + f1[u] + f1[v] + f1[w] - f0;
        variance += c * c * sigma2 * sigma2 * sigma2;
      }
    }
  }
  return variance;
}

// Stage-one estimators written directly from their definitions.
inline double TriOrValue(const Matrix& a_hat) {
  const Matrix b = Product(a_hat, a_hat);
  double trace = 0;
  for (std::size_t i = 0; i < a_hat.size(); ++i)
    for (std::size_t k = 0; k < a_hat.size(); ++k) trace += b[i][k] * a_hat[k][i];
  return trace / 6.0;
}

inline double TriTrValue(const Graph& g, const Matrix& a_hat) {
  double total = 0;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    const auto nbrs = g.neighbors(u);
    for (std::size_t x = 0; x < nbrs.size(); ++x)
      for (std::size_t y = 0; y < x; ++y) total += 2.0 * a_hat[nbrs[x]][nbrs[y]];
  }
  return total / 6.0;
}

inline double TriMtrValue(const Graph& g, const Matrix& a_hat) {
  const Matrix b = Product(a_hat, a_hat);
  double total = 0;
  for (NodeId u = 0; u < g.num_nodes(); ++u)
    for (NodeId i : g.neighbors(u)) total += b[i][u];
  return total / 6.0;
}

inline double QuaTrValue(const Graph& g, const Matrix& a_hat) {
  const Matrix b = Product(a_hat, a_hat);
  double total = 0;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    const auto nbrs = g.neighbors(u);
    for (std::size_t x = 0; x < nbrs.size(); ++x)
      for (std::size_t y = 0; y < x; ++y) total += 2.0 * (b[nbrs[x]][nbrs[y]] - 1.0);
  }
  return total / 8.0;
}

}  // namespace noisyadj::oracle

#endif  // NOISYADJ_TESTS_ORACLES_H_

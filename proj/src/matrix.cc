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
#include "noisyadj/matrix.h"

#include <algorithm>
#include <string>
#include <thread>

#include "noisyadj/error.h"

namespace noisyadj {

std::string_view ToString(MatMulKind kind) {
  switch (kind) {
    case MatMulKind::kNaive:
      return "naive";
    case MatMulKind::kBlocked:
      return "blocked";
    case MatMulKind::kCustom:
      return "custom";
  }
  return "unknown";
}

MatMulKind ParseMatMulKind(std::string_view name) {
  if (name == "naive") return MatMulKind::kNaive;
  if (name == "blocked") return MatMulKind::kBlocked;
  throw DomainError("unknown multiply strategy: " + std::string(name));
}

void NaiveKernel(const double* a, std::size_t rows, const double* b,
                 std::size_t n, double* c) {
  std::fill(c, c + rows * n, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a[i * n + k];
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
    }
  }
}

void BlockedKernel(const double* a, std::size_t rows, const double* b,
                   std::size_t n, double* c, std::size_t block) {
  if (block == 0) block = 64;
  const std::size_t jblock = block * 4;
  std::fill(c, c + rows * n, 0.0);
  for (std::size_t kk = 0; kk < n; kk += block) {
    const std::size_t k_end = std::min(kk + block, n);
    for (std::size_t jj = 0; jj < n; jj += jblock) {
      const std::size_t j_end = std::min(jj + jblock, n);
      const std::size_t width = j_end - jj;
      std::size_t i = 0;
      for (; i + 4 <= rows; i += 4) {
        double* __restrict c0 = c + i * n + jj;
        double* __restrict c1 = c0 + n;
        double* __restrict c2 = c1 + n;
        double* __restrict c3 = c2 + n;
        for (std::size_t k = kk; k < k_end; ++k) {
          const double a0 = a[i * n + k];
          const double a1 = a[(i + 1) * n + k];
          const double a2 = a[(i + 2) * n + k];
          const double a3 = a[(i + 3) * n + k];
          const double* __restrict bk = b + k * n + jj;
          for (std::size_t j = 0; j < width; ++j) {
            const double bv = bk[j];
            c0[j] += a0 * bv;
            c1[j] += a1 * bv;
            c2[j] += a2 * bv;
            c3[j] += a3 * bv;
          }
        }
      }
      for (; i < rows; ++i) {
        double* __restrict ci = c + i * n + jj;
        for (std::size_t k = kk; k < k_end; ++k) {
          const double aik = a[i * n + k];
          const double* __restrict bk = b + k * n + jj;
          for (std::size_t j = 0; j < width; ++j) ci[j] += aik * bk[j];
        }
      }
    }
  }
}

namespace {

void RunKernel(const MatMulStrategy& strategy, const double* a, std::size_t rows,
               const double* b, std::size_t n, double* c) {
  switch (strategy.kind) {
    case MatMulKind::kNaive:
      NaiveKernel(a, rows, b, n, c);
      return;
    case MatMulKind::kBlocked:
      BlockedKernel(a, rows, b, n, c, strategy.block);
      return;
    case MatMulKind::kCustom:
      if (!strategy.custom) throw DomainError("custom strategy without a kernel");
      strategy.custom(a, rows, b, n, c);
      return;
  }
}

}  // namespace

void MultiplyRows(const DenseMatrix& a, std::size_t row_begin,
                  std::size_t row_end, const DenseMatrix& b,
                  const MatMulStrategy& strategy, std::span<double> out) {
  const std::size_t n = a.n;
  if (b.n != n) throw DomainError("matrix size mismatch");
  if (row_end < row_begin || row_end > n) throw DomainError("bad row range");
  const std::size_t rows = row_end - row_begin;
  if (out.size() < rows * n) throw DomainError("output panel too small");
  if (rows == 0) return;

  unsigned threads = strategy.threads;
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  // Each worker owns a contiguous slab of rows; every output element is
  // produced by one thread with a fixed summation order.
  const std::size_t min_rows = 64;
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(1, rows / min_rows)));
  const double* a_rows = a.data.data() + row_begin * n;
  if (threads <= 1) {
    RunKernel(strategy, a_rows, rows, b.data.data(), n, out.data());
    return;
  }
  std::vector<std::thread> workers;
  const std::size_t per = (rows + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t r0 = t * per;
    const std::size_t r1 = std::min(rows, r0 + per);
    if (r0 >= r1) break;
    workers.emplace_back([&, r0, r1] {
      RunKernel(strategy, a_rows + r0 * n, r1 - r0, b.data.data(), n,
                out.data() + r0 * n);
    });
  }
  for (auto& w : workers) w.join();
}

DenseMatrix Multiply(const DenseMatrix& a, const DenseMatrix& b,
                     const MatMulStrategy& strategy) {
  DenseMatrix c(a.n);
  MultiplyRows(a, 0, a.n, b, strategy, c.data);
  return c;
}

}  // namespace noisyadj

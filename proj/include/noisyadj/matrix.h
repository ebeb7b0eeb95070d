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
#ifndef NOISYADJ_MATRIX_H_
#define NOISYADJ_MATRIX_H_

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace noisyadj {

// Dense row-major n x n matrix of doubles.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t size) : n(size), data(size * size, 0.0) {}

  double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
  std::span<const double> row(std::size_t i) const { return {data.data() + i * n, n}; }
  std::span<double> row(std::size_t i) { return {data.data() + i * n, n}; }
};

// Computes c = a * b where a is rows x n, b is n x n and c is rows x n, all
// row-major. c is fully overwritten.
using MatMulKernel = std::function<void(const double* a, std::size_t rows,
                                        const double* b, std::size_t n,
                                        double* c)>;

enum class MatMulKind { kNaive, kBlocked, kCustom };

// Selects the multiply kernel. A faster (e.g. sub-cubic) algorithm can be
// supplied through Custom() without touching any caller.
struct MatMulStrategy {
  MatMulKind kind = MatMulKind::kBlocked;
  std::size_t block = 64;
  // Worker threads for row panels; 0 means one per hardware thread.
  unsigned threads = 0;
  MatMulKernel custom;

  static MatMulStrategy Naive() { return {MatMulKind::kNaive, 0, 1, {}}; }
  static MatMulStrategy Blocked(std::size_t block = 64, unsigned threads = 0) {
    return {MatMulKind::kBlocked, block, threads, {}};
  }
  static MatMulStrategy Custom(MatMulKernel kernel) {
    return {MatMulKind::kCustom, 0, 1, std::move(kernel)};
  }
};

std::string_view ToString(MatMulKind kind);
MatMulKind ParseMatMulKind(std::string_view name);

// Reference i-k-j triple loop.
void NaiveKernel(const double* a, std::size_t rows, const double* b,
                 std::size_t n, double* c);
// Cache-blocked kernel with a four-row register tile.
void BlockedKernel(const double* a, std::size_t rows, const double* b,
                   std::size_t n, double* c, std::size_t block);

DenseMatrix Multiply(const DenseMatrix& a, const DenseMatrix& b,
                     const MatMulStrategy& strategy);

// Rows [row_begin, row_end) of a * b written to out (row-major,
// (row_end - row_begin) x n).
void MultiplyRows(const DenseMatrix& a, std::size_t row_begin,
                  std::size_t row_end, const DenseMatrix& b,
                  const MatMulStrategy& strategy, std::span<double> out);

}  // namespace noisyadj

#endif  // NOISYADJ_MATRIX_H_

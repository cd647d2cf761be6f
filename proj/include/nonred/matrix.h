// Copyright 2026 The nonred Authors.
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

#ifndef NONRED_MATRIX_H_
#define NONRED_MATRIX_H_

#include <cstddef>
#include <span>
#include <vector>

#include "nonred/scalar.h"

namespace nonred {

// Dense row-major matrix. Indices are zero-based throughout the library.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix Identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// A matrix that is required (and checked where it matters) to be n x n.
template <typename T>
using SquareMatrix = Matrix<T>;

template <typename To, typename From>
Matrix<To> ConvertMatrix(const Matrix<From>& m) {
  Matrix<To> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out(r, c) = ConvertScalar<To>(m(r, c));
    }
  }
  return out;
}

template <typename T>
Matrix<T> Multiply(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

// Row vector times matrix: returns x^T M.
template <typename T>
std::vector<T> LeftMultiply(std::span<const T> x, const Matrix<T>& m) {
  std::vector<T> out(m.cols(), T(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += x[i] * m(i, j);
  }
  return out;
}

template <typename T>
Matrix<T> Transpose(const Matrix<T>& m) {
  Matrix<T> out(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = m(r, c);
  }
  return out;
}

template <typename T>
bool IsSkewSymmetric(const Matrix<T>& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m(i, i) != 0) return false;
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      if (m(i, j) != -m(j, i)) return false;
    }
  }
  return true;
}

// Deletes the given row and column.
template <typename T>
Matrix<T> Minor(const Matrix<T>& m, std::size_t row, std::size_t col) {
  Matrix<T> out(m.rows() - 1, m.cols() - 1);
  for (std::size_t r = 0, ro = 0; r < m.rows(); ++r) {
    if (r == row) continue;
    for (std::size_t c = 0, co = 0; c < m.cols(); ++c) {
      if (c == col) continue;
      out(ro, co++) = m(r, c);
    }
    ++ro;
  }
  return out;
}

}  // namespace nonred

#endif  // NONRED_MATRIX_H_

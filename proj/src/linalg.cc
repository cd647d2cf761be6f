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

#include "nonred/linalg.h"

#include <string>
#include <utility>

#include "nonred/error.h"

namespace nonred {

namespace {

template <typename T>
constexpr bool kIsExact = ScalarTraits<T>::kBackend == Backend::kExact;

template <typename T>
double MaxAbsEntry(const Matrix<T>& m) {
  double best = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      best = std::max(best, ScalarTraits<T>::ToDouble(ScalarTraits<T>::Abs(m(r, c))));
    }
  }
  return best;
}

void RequireSquare(std::size_t rows, std::size_t cols, const char* what) {
  if (rows != cols) {
    throw NonredError(ErrorCode::kBadDimension,
                      std::string(what) + " needs a square matrix");
  }
}

}  // namespace

template <typename T>
LuDecomposition<T>::LuDecomposition(const Matrix<T>& m,
                                    double relative_tolerance)
    : n_(m.rows()), lu_(m), perm_(m.rows()) {
  RequireSquare(m.rows(), m.cols(), "LU factorization");
  for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;
  const double threshold = relative_tolerance * MaxAbsEntry(m);

  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t pivot = k;
    if constexpr (kIsExact<T>) {
      while (pivot < n_ && lu_(pivot, k) == 0) ++pivot;
      if (pivot == n_) {
        singular_ = exactly_zero_ = true;
        return;
      }
    } else {
      double best = std::fabs(lu_(k, k));
      for (std::size_t r = k + 1; r < n_; ++r) {
        if (std::fabs(lu_(r, k)) > best) {
          best = std::fabs(lu_(r, k));
          pivot = r;
        }
      }
      if (best == 0.0) {
        singular_ = exactly_zero_ = true;
        return;
      }
      if (best <= threshold) singular_ = true;
    }
    if (pivot != k) {
      for (std::size_t c = 0; c < n_; ++c) std::swap(lu_(k, c), lu_(pivot, c));
      std::swap(perm_[k], perm_[pivot]);
      odd_permutation_ = !odd_permutation_;
    }
    const T inv_pivot = T(1) / lu_(k, k);
    for (std::size_t r = k + 1; r < n_; ++r) {
      if (lu_(r, k) == 0) continue;
      const T factor = lu_(r, k) * inv_pivot;
      lu_(r, k) = factor;
      for (std::size_t c = k + 1; c < n_; ++c) lu_(r, c) -= factor * lu_(k, c);
    }
  }
}

template <typename T>
T LuDecomposition<T>::Determinant() const {
  if (exactly_zero_) return T(0);
  T det(1);
  for (std::size_t k = 0; k < n_; ++k) det *= lu_(k, k);
  return odd_permutation_ ? T(-det) : det;
}

template <typename T>
std::vector<T> LuDecomposition<T>::Solve(std::span<const T> b) const {
  if (singular_) throw NonredError(ErrorCode::kSingular, "matrix is singular");
  std::vector<T> x(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    T sum = b[perm_[i]];
    for (std::size_t k = 0; k < i; ++k) sum -= lu_(i, k) * x[k];
    x[i] = sum;
  }
  for (std::size_t i = n_; i-- > 0;) {
    T sum = x[i];
    for (std::size_t k = i + 1; k < n_; ++k) sum -= lu_(i, k) * x[k];
    x[i] = sum / lu_(i, i);
  }
  return x;
}

template <typename T>
std::vector<T> LuDecomposition<T>::SolveTransposed(std::span<const T> b) const {
  if (singular_) throw NonredError(ErrorCode::kSingular, "matrix is singular");
  // M^T = U^T L^T P, so solve U^T z = b, then L^T y = z, then x = P^T y.
  std::vector<T> y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    T sum = b[i];
    for (std::size_t k = 0; k < i; ++k) sum -= lu_(k, i) * y[k];
    y[i] = sum / lu_(i, i);
  }
  for (std::size_t i = n_; i-- > 0;) {
    T sum = y[i];
    for (std::size_t k = i + 1; k < n_; ++k) sum -= lu_(k, i) * y[k];
    y[i] = sum;
  }
  std::vector<T> x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[perm_[i]] = y[i];
  return x;
}

template <typename T>
Matrix<T> LuDecomposition<T>::Inverse() const {
  Matrix<T> inv(n_, n_);
  std::vector<T> unit(n_, T(0));
  for (std::size_t c = 0; c < n_; ++c) {
    unit[c] = T(1);
    const std::vector<T> col = Solve(unit);
    unit[c] = T(0);
    for (std::size_t r = 0; r < n_; ++r) inv(r, c) = col[r];
  }
  return inv;
}

template <typename T>
Matrix<T> ReplaceColumnWithOnes(const Matrix<T>& a, std::size_t j) {
  if (j >= a.cols()) {
    throw NonredError(ErrorCode::kIndexOutOfRange,
                      "column " + std::to_string(j) + " out of range");
  }
  Matrix<T> out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) out(r, j) = T(1);
  return out;
}

template <typename T>
T Determinant(const Matrix<T>& m) {
  RequireSquare(m.rows(), m.cols(), "determinant");
  if (m.rows() == 0) return T(1);
  return LuDecomposition<T>(m, 0.0).Determinant();
}

template <typename T>
Matrix<T> Inverse(const Matrix<T>& m) {
  return LuDecomposition<T>(m).Inverse();
}

template <typename T>
RankReport<T> Rank(const Matrix<T>& m, double tolerance) {
  if (tolerance < 0) {
    throw NonredError(ErrorCode::kInvalidArgument, "negative rank tolerance");
  }
  if (kIsExact<T> && tolerance != 0) {
    throw NonredError(ErrorCode::kInvalidArgument,
                      "exact rank requires tolerance 0");
  }
  RankReport<T> report;
  report.tolerance = tolerance;
  Matrix<T> work = m;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const double threshold = tolerance * MaxAbsEntry(m);

  std::size_t k = 0;
  for (; k < rows && k < cols; ++k) {
    // Complete pivoting: largest magnitude in the trailing block.
    std::size_t pr = k, pc = k;
    T best(0);
    for (std::size_t r = k; r < rows; ++r) {
      for (std::size_t c = k; c < cols; ++c) {
        const T mag = ScalarTraits<T>::Abs(work(r, c));
        if (mag > best) {
          best = mag;
          pr = r;
          pc = c;
        }
      }
    }
    if (best == 0 || ScalarTraits<T>::ToDouble(best) <= threshold) break;
    report.pivots.push_back(best);
    if (pr != k) {
      for (std::size_t c = 0; c < cols; ++c) std::swap(work(k, c), work(pr, c));
    }
    if (pc != k) {
      for (std::size_t r = 0; r < rows; ++r) std::swap(work(r, k), work(r, pc));
    }
    for (std::size_t r = k + 1; r < rows; ++r) {
      if (work(r, k) == 0) continue;
      const T factor = work(r, k) / work(k, k);
      for (std::size_t c = k; c < cols; ++c) work(r, c) -= factor * work(k, c);
    }
  }
  report.rank = static_cast<int>(k);
  return report;
}

template <typename T>
T Cofactor(const Matrix<T>& m, std::size_t i, std::size_t j) {
  RequireSquare(m.rows(), m.cols(), "cofactor");
  if (i >= m.rows() || j >= m.cols()) {
    throw NonredError(ErrorCode::kIndexOutOfRange, "cofactor index out of range");
  }
  const T minor_det = Determinant(Minor(m, i, j));
  return (i + j) % 2 == 0 ? minor_det : T(-minor_det);
}

template <typename T>
Strategy<T> KernelNash(const Matrix<T>& a) {
  RequireSquare(a.rows(), a.cols(), "kernel_nash");
  const std::size_t n = a.rows();
  const int rank = Rank(a, DefaultRankTolerance<T>()).rank;
  if (rank != static_cast<int>(n) - 1) {
    throw NonredError(ErrorCode::kConditionViolated,
                      "rank is " + std::to_string(rank) + ", need " +
                          std::to_string(n - 1));
  }
  std::vector<T> unit(n, T(0));
  for (std::size_t j = 0; j < n; ++j) {
    LuDecomposition<T> lu(ReplaceColumnWithOnes(a, j));
    if (lu.singular()) continue;
    unit[j] = T(1);
    std::vector<T> pi = lu.SolveTransposed(unit);
    if constexpr (!kIsExact<T>) {
      // Column j of A_j is all ones, so sum(pi) = 1 up to rounding; remove the
      // rounding so ill-conditioned estimates still form a valid Strategy.
      double sum = 0.0;
      for (double v : pi) sum += v;
      for (double& v : pi) v /= sum;
    }
    return Strategy<T>::FromWeights(std::move(pi));
  }
  throw NonredError(ErrorCode::kAllAjSingular,
                    "every column-replaced matrix is singular");
}

#define NONRED_INSTANTIATE_LINALG(T)                                         \
  template class LuDecomposition<T>;                                         \
  template Matrix<T> ReplaceColumnWithOnes(const Matrix<T>&, std::size_t);   \
  template T Determinant(const Matrix<T>&);                                  \
  template Matrix<T> Inverse(const Matrix<T>&);                              \
  template RankReport<T> Rank(const Matrix<T>&, double);                     \
  template T Cofactor(const Matrix<T>&, std::size_t, std::size_t);           \
  template Strategy<T> KernelNash(const Matrix<T>&);

NONRED_INSTANTIATE_LINALG(double)
NONRED_INSTANTIATE_LINALG(Rational)

#undef NONRED_INSTANTIATE_LINALG

}  // namespace nonred

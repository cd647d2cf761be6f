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

#ifndef NONRED_LINALG_H_
#define NONRED_LINALG_H_

#include <cstddef>
#include <span>
#include <vector>

#include "nonred/game.h"
#include "nonred/matrix.h"
#include "nonred/scalar.h"

// Small dense linear algebra over both scalar backends. Rational code paths
// pivot on the first nonzero entry and are exact; double code paths use
// partial pivoting and treat a pivot as zero when its magnitude is at most
// kFloatPivotTolerance times the largest absolute entry of the input.

namespace nonred {

// PA = LU factorization. Construction never throws; a matrix whose
// elimination meets a (numerically) zero pivot is flagged singular and
// cannot be solved against.
template <typename T>
class LuDecomposition {
 public:
  explicit LuDecomposition(const Matrix<T>& m,
                           double relative_tolerance = kFloatPivotTolerance);

  std::size_t size() const { return n_; }
  bool singular() const { return singular_; }

  // Product of the pivots with the permutation sign. Exact for Rational.
  T Determinant() const;

  // Solves M x = b. Throws kSingular.
  std::vector<T> Solve(std::span<const T> b) const;
  // Solves x^T M = b^T. Throws kSingular.
  std::vector<T> SolveTransposed(std::span<const T> b) const;
  Matrix<T> Inverse() const;

 private:
  std::size_t n_ = 0;
  Matrix<T> lu_;
  std::vector<std::size_t> perm_;
  bool odd_permutation_ = false;
  bool singular_ = false;
  bool exactly_zero_ = false;
};

template <typename T>
struct RankReport {
  int rank = 0;
  double tolerance = 0.0;
  std::vector<T> pivots;  // magnitudes of the accepted pivots, in order
};

// A_j: column j replaced by the all-ones vector. Throws kIndexOutOfRange.
template <typename T>
Matrix<T> ReplaceColumnWithOnes(const Matrix<T>& a, std::size_t j);
template <typename T>
Matrix<T> ReplaceColumnWithOnes(const SkewGame<T>& a, std::size_t j) {
  return ReplaceColumnWithOnes(a.ToMatrix(), j);
}

// The determinant of the 0x0 matrix is 1.
template <typename T>
T Determinant(const Matrix<T>& m);

// Throws kSingular.
template <typename T>
Matrix<T> Inverse(const Matrix<T>& m);

// Gaussian elimination with complete pivoting. For double, pivots of
// magnitude <= tolerance * max|a_ij| are rejected; for Rational the
// tolerance must be 0 (kInvalidArgument otherwise).
template <typename T>
RankReport<T> Rank(const Matrix<T>& m, double tolerance);
template <typename T>
RankReport<T> Rank(const SkewGame<T>& a, double tolerance) {
  return Rank(a.ToMatrix(), tolerance);
}

// (-1)^(i+j) det(M with row i and column j deleted).
template <typename T>
T Cofactor(const Matrix<T>& m, std::size_t i, std::size_t j);

// The equilibrium pi with pi^T A = 0 and sum(pi) = 1, computed as
// pi^T = e_j^T A_j^{-1} for the first j whose A_j is non-singular (j = 0
// first). Throws kConditionViolated when rank(A) != n - 1 and kAllAjSingular
// when every A_j is singular.
template <typename T>
Strategy<T> KernelNash(const Matrix<T>& a);
template <typename T>
Strategy<T> KernelNash(const SkewGame<T>& a) {
  return KernelNash(a.ToMatrix());
}

// Default rank tolerance for the backend: 0 for Rational, kFloatPivotTolerance
// for double.
template <typename T>
constexpr double DefaultRankTolerance() {
  return ScalarTraits<T>::kBackend == Backend::kExact ? 0.0
                                                      : kFloatPivotTolerance;
}

}  // namespace nonred

#endif  // NONRED_LINALG_H_

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

#ifndef NONRED_POLYTOPE_H_
#define NONRED_POLYTOPE_H_

#include <cstddef>
#include <vector>

#include "nonred/game.h"
#include "nonred/matrix.h"
#include "nonred/scalar.h"

// The epsilon-Nash polytope P_A(eps) = { x in S_n : x^T A >= -eps 1^T }.

namespace nonred {

// pi and the rows 1^T A_j^{-1} for every j, the quantities behind the vertex
// formula and phi. Computing them needs every A_j to be non-singular.
template <typename T>
struct ColumnReplacementSolution {
  std::vector<T> pi;                       // e_j^T A_j^{-1} for j = pi_column
  std::size_t pi_column = 0;               // first non-singular A_j
  std::vector<std::vector<T>> ones_rows;   // ones_rows[j] = 1^T A_j^{-1}
};

// Throws kAllAjSingular if no A_j is invertible, kSingular (naming the
// column) if only some are. Skips the rank check, so it accepts empirical
// estimates as well as games.
template <typename T>
ColumnReplacementSolution<T> SolveColumnReplacements(const Matrix<T>& a);

// max_j max_i |(1^T A_j^{-1} - pi^T)_i|.
template <typename T>
T PhiFromSolution(const ColumnReplacementSolution<T>& solution);

// The hardness parameter phi(A). Checks the rank condition first, so throws
// kConditionViolated / kAllAjSingular like KernelNash.
template <typename T>
T Phi(const SkewGame<T>& a);

template <typename T>
struct EpsilonPolytope {
  T epsilon = T(0);
  // vertices[j] = pi - eps (1^T A_j^{-1} - pi). Each sums to one but may have
  // negative coordinates.
  std::vector<std::vector<T>> vertices;
  Backend backend = ScalarTraits<T>::kBackend;
};

template <typename T>
EpsilonPolytope<T> VerticesFromSolution(const ColumnReplacementSolution<T>& solution,
                                        const T& epsilon);

// Checks the rank condition, then applies the closed-form vertex formula.
template <typename T>
EpsilonPolytope<T> NashPolytopeVertices(const SkewGame<T>& a, const T& epsilon);

// (x^T A)_i >= -eps for every i.
template <typename T>
bool IsEpsilonNash(const SkewGame<T>& a, const Strategy<T>& x, const T& epsilon);

// Smallest coordinate of vertex j. Throws kIndexOutOfRange.
template <typename T>
T MinVertexCoordinate(const EpsilonPolytope<T>& polytope, std::size_t j);

// Optimal value of  max t  s.t.  x^T A >= -eps 1^T, sum(x) = 1, x >= t 1,
// plus x >= 0 when `nonnegative` is set. Solved as an LP with the simplex
// method over the matrix's own backend. Throws kNumericalFailure if the
// solver breaks down.
template <typename T>
T MaxMinCoordinate(const Matrix<T>& a, const T& epsilon, bool nonnegative);

// Does P_A(eps) meet S_n^alpha = { x in S_n : x >= alpha 1 }? Decided by the
// LP above, independently of the vertex formula.
template <typename T>
bool IntersectsSimplexAlpha(const SkewGame<T>& a, const T& epsilon,
                            const T& alpha);

}  // namespace nonred

#endif  // NONRED_POLYTOPE_H_

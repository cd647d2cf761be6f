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

#include "nonred/polytope.h"

#include <string>

#include "nonred/error.h"
#include "nonred/linalg.h"
#include "nonred/lp.h"

namespace nonred {

template <typename T>
ColumnReplacementSolution<T> SolveColumnReplacements(const Matrix<T>& a) {
  const std::size_t n = a.rows();
  ColumnReplacementSolution<T> out;
  out.ones_rows.resize(n);
  const std::vector<T> ones(n, T(1));
  std::vector<T> unit(n, T(0));
  std::optional<std::size_t> singular_column;
  for (std::size_t j = 0; j < n; ++j) {
    LuDecomposition<T> lu(ReplaceColumnWithOnes(a, j));
    if (lu.singular()) {
      if (!singular_column) singular_column = j;
      continue;
    }
    if (out.pi.empty()) {
      unit[j] = T(1);
      out.pi = lu.SolveTransposed(unit);
      out.pi_column = j;
    }
    out.ones_rows[j] = lu.SolveTransposed(ones);
  }
  if (out.pi.empty()) {
    throw NonredError(ErrorCode::kAllAjSingular,
                      "every column-replaced matrix is singular");
  }
  if (singular_column) {
    throw NonredError(ErrorCode::kSingular,
                      "A_j is singular for j = " + std::to_string(*singular_column),
                      *singular_column);
  }
  return out;
}

template <typename T>
T PhiFromSolution(const ColumnReplacementSolution<T>& solution) {
  T best(0);
  for (const std::vector<T>& row : solution.ones_rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      const T gap = ScalarTraits<T>::Abs(row[i] - solution.pi[i]);
      if (gap > best) best = gap;
    }
  }
  return best;
}

template <typename T>
T Phi(const SkewGame<T>& a) {
  const Matrix<T> m = a.ToMatrix();
  KernelNash(m);  // rank and invertibility check
  return PhiFromSolution(SolveColumnReplacements(m));
}

template <typename T>
EpsilonPolytope<T> VerticesFromSolution(const ColumnReplacementSolution<T>& solution,
                                        const T& epsilon) {
  EpsilonPolytope<T> polytope;
  polytope.epsilon = epsilon;
  polytope.vertices.reserve(solution.ones_rows.size());
  for (const std::vector<T>& row : solution.ones_rows) {
    std::vector<T> v(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
      v[i] = solution.pi[i] - epsilon * (row[i] - solution.pi[i]);
    }
    polytope.vertices.push_back(std::move(v));
  }
  return polytope;
}

template <typename T>
EpsilonPolytope<T> NashPolytopeVertices(const SkewGame<T>& a, const T& epsilon) {
  if (epsilon < 0) {
    throw NonredError(ErrorCode::kInvalidArgument, "epsilon must be >= 0");
  }
  const Matrix<T> m = a.ToMatrix();
  KernelNash(m);
  return VerticesFromSolution(SolveColumnReplacements(m), epsilon);
}

template <typename T>
bool IsEpsilonNash(const SkewGame<T>& a, const Strategy<T>& x, const T& epsilon) {
  if (x.size() != static_cast<std::size_t>(a.n())) {
    throw NonredError(ErrorCode::kWrongLength, "strategy size mismatch");
  }
  const std::vector<T> payoff =
      LeftMultiply(std::span<const T>(x.weights()), a.ToMatrix());
  for (const T& v : payoff) {
    if (v < -epsilon) return false;
  }
  return true;
}

template <typename T>
T MinVertexCoordinate(const EpsilonPolytope<T>& polytope, std::size_t j) {
  if (j >= polytope.vertices.size()) {
    throw NonredError(ErrorCode::kIndexOutOfRange,
                      "vertex " + std::to_string(j) + " out of range");
  }
  const std::vector<T>& v = polytope.vertices[j];
  T best = v.front();
  for (const T& x : v) {
    if (x < best) best = x;
  }
  return best;
}

template <typename T>
T MaxMinCoordinate(const Matrix<T>& a, const T& epsilon, bool nonnegative) {
  const std::size_t n = a.rows();
  // Substitute x = t 1 + w with w >= 0. When t may be negative it is split
  // as t = t_plus - t_minus. Variables: [t_plus, (t_minus), w_0..w_{n-1}].
  const std::size_t offset = nonnegative ? 1 : 2;
  LinearProgram<T> lp;
  lp.num_variables = offset + n;
  lp.objective.assign(lp.num_variables, T(0));
  lp.objective[0] = T(1);
  if (!nonnegative) lp.objective[1] = T(-1);

  typename LinearProgram<T>::Row sum_row;
  sum_row.coefficients.assign(lp.num_variables, T(1));
  sum_row.coefficients[0] = T(static_cast<int>(n));
  if (!nonnegative) sum_row.coefficients[1] = T(-static_cast<int>(n));
  sum_row.sense = ConstraintSense::kEqual;
  sum_row.rhs = T(1);
  lp.rows.push_back(std::move(sum_row));

  for (std::size_t k = 0; k < n; ++k) {
    typename LinearProgram<T>::Row row;
    row.coefficients.assign(lp.num_variables, T(0));
    T column_sum(0);
    for (std::size_t i = 0; i < n; ++i) {
      column_sum += a(i, k);
      row.coefficients[offset + i] = a(i, k);
    }
    row.coefficients[0] = column_sum;
    if (!nonnegative) row.coefficients[1] = -column_sum;
    row.sense = ConstraintSense::kGreaterEqual;
    row.rhs = -epsilon;
    lp.rows.push_back(std::move(row));
  }

  const LpSolution<T> solution = SolveLinearProgram(lp);
  if (solution.status != LpStatus::kOptimal) {
    throw NonredError(ErrorCode::kNumericalFailure,
                      solution.status == LpStatus::kInfeasible
                          ? "max-min-coordinate LP reported infeasible"
                          : "max-min-coordinate LP reported unbounded");
  }
  return solution.value;
}

template <typename T>
bool IntersectsSimplexAlpha(const SkewGame<T>& a, const T& epsilon,
                            const T& alpha) {
  if (epsilon < 0) {
    throw NonredError(ErrorCode::kInvalidArgument, "epsilon must be >= 0");
  }
  return MaxMinCoordinate(a.ToMatrix(), epsilon, /*nonnegative=*/false) >= alpha;
}

#define NONRED_INSTANTIATE_POLYTOPE(T)                                         \
  template ColumnReplacementSolution<T> SolveColumnReplacements(const Matrix<T>&); \
  template T PhiFromSolution(const ColumnReplacementSolution<T>&);             \
  template T Phi(const SkewGame<T>&);                                          \
  template EpsilonPolytope<T> VerticesFromSolution(                            \
      const ColumnReplacementSolution<T>&, const T&);                          \
  template EpsilonPolytope<T> NashPolytopeVertices(const SkewGame<T>&, const T&); \
  template bool IsEpsilonNash(const SkewGame<T>&, const Strategy<T>&, const T&); \
  template T MinVertexCoordinate(const EpsilonPolytope<T>&, std::size_t);      \
  template T MaxMinCoordinate(const Matrix<T>&, const T&, bool);               \
  template bool IntersectsSimplexAlpha(const SkewGame<T>&, const T&, const T&);

NONRED_INSTANTIATE_POLYTOPE(double)
NONRED_INSTANTIATE_POLYTOPE(Rational)

#undef NONRED_INSTANTIATE_POLYTOPE

}  // namespace nonred

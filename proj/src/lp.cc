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

#include "nonred/lp.h"

#include <optional>

#include "nonred/error.h"

namespace nonred {

namespace {

template <typename T>
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * (cols + 1), T(0)), basis_(rows) {}

  T& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  T& rhs(std::size_t r) { return at(r, cols_); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void Pivot(std::size_t row, std::size_t col) {
    const T inv = T(1) / at(row, col);
    for (std::size_t c = 0; c <= cols_; ++c) at(row, c) *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row || at(r, col) == 0) continue;
      const T factor = at(r, col);
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= factor * at(row, c);
    }
    basis_[row] = col;
  }

  void DropRow(std::size_t row) {
    data_.erase(data_.begin() + row * (cols_ + 1),
                data_.begin() + (row + 1) * (cols_ + 1));
    basis_.erase(basis_.begin() + row);
    --rows_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<T> data_;
  std::vector<std::size_t> basis_;
};

template <typename T>
bool Positive(const T& x) {
  if constexpr (std::is_same_v<T, double>) {
    return x > 1e-9;
  } else {
    return x > 0;
  }
}

template <typename T>
bool NonZero(const T& x) {
  return Positive(x) || Positive(T(-x));
}

enum class PhaseResult { kOptimal, kUnbounded };

// Maximizes cost . x over the current tableau; columns with allowed[c] false
// never enter.
template <typename T>
PhaseResult RunSimplex(Tableau<T>& tab, const std::vector<T>& cost,
                       const std::vector<bool>& allowed) {
  // Bland's rule guarantees termination; the cap only guards against a
  // floating-point tableau that never settles.
  const std::size_t max_iterations = 50000;
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    std::optional<std::size_t> entering;
    for (std::size_t c = 0; c < tab.cols() && !entering; ++c) {
      if (!allowed[c]) continue;
      T reduced = cost[c];
      for (std::size_t r = 0; r < tab.rows(); ++r) {
        reduced -= cost[tab.basis()[r]] * tab.at(r, c);
      }
      if (Positive(reduced)) entering = c;
    }
    if (!entering) return PhaseResult::kOptimal;

    std::optional<std::size_t> leaving;
    T best_ratio(0);
    for (std::size_t r = 0; r < tab.rows(); ++r) {
      if (!Positive(tab.at(r, *entering))) continue;
      const T ratio = tab.rhs(r) / tab.at(r, *entering);
      if (!leaving || ratio < best_ratio ||
          (ratio == best_ratio && tab.basis()[r] < tab.basis()[*leaving])) {
        leaving = r;
        best_ratio = ratio;
      }
    }
    if (!leaving) return PhaseResult::kUnbounded;
    tab.Pivot(*leaving, *entering);
  }
  throw NonredError(ErrorCode::kNumericalFailure,
                    "simplex iteration limit reached");
}

}  // namespace

template <typename T>
LpSolution<T> SolveLinearProgram(const LinearProgram<T>& lp) {
  const std::size_t n = lp.num_variables;
  const std::size_t m = lp.rows.size();
  if (lp.objective.size() != n) {
    throw NonredError(ErrorCode::kInvalidArgument, "objective size mismatch");
  }

  // Columns: original variables, one slack/surplus per inequality, one
  // artificial per >= or = row (after making every rhs nonnegative).
  std::vector<ConstraintSense> senses(m);
  std::vector<bool> flip(m);
  std::size_t num_slack = 0, num_artificial = 0;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = lp.rows[r];
    if (row.coefficients.size() != n) {
      throw NonredError(ErrorCode::kInvalidArgument, "row size mismatch");
    }
    flip[r] = row.rhs < 0;
    ConstraintSense s = row.sense;
    if (flip[r] && s != ConstraintSense::kEqual) {
      s = s == ConstraintSense::kLessEqual ? ConstraintSense::kGreaterEqual
                                           : ConstraintSense::kLessEqual;
    }
    senses[r] = s;
    if (s != ConstraintSense::kEqual) ++num_slack;
    if (s != ConstraintSense::kLessEqual) ++num_artificial;
  }
  const std::size_t slack_begin = n;
  const std::size_t artificial_begin = n + num_slack;
  const std::size_t total = artificial_begin + num_artificial;

  Tableau<T> tab(m, total);
  std::size_t next_slack = slack_begin, next_artificial = artificial_begin;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = lp.rows[r];
    for (std::size_t c = 0; c < n; ++c) {
      tab.at(r, c) = flip[r] ? T(-row.coefficients[c]) : row.coefficients[c];
    }
    tab.rhs(r) = flip[r] ? T(-row.rhs) : row.rhs;
    switch (senses[r]) {
      case ConstraintSense::kLessEqual:
        tab.at(r, next_slack) = T(1);
        tab.basis()[r] = next_slack++;
        break;
      case ConstraintSense::kGreaterEqual:
        tab.at(r, next_slack++) = T(-1);
        tab.at(r, next_artificial) = T(1);
        tab.basis()[r] = next_artificial++;
        break;
      case ConstraintSense::kEqual:
        tab.at(r, next_artificial) = T(1);
        tab.basis()[r] = next_artificial++;
        break;
    }
  }

  LpSolution<T> solution;
  std::vector<bool> allowed(total, true);

  if (num_artificial > 0) {
    std::vector<T> phase1_cost(total, T(0));
    for (std::size_t c = artificial_begin; c < total; ++c) phase1_cost[c] = T(-1);
    RunSimplex(tab, phase1_cost, allowed);
    T infeasibility(0);
    for (std::size_t r = 0; r < tab.rows(); ++r) {
      if (tab.basis()[r] >= artificial_begin) infeasibility += tab.rhs(r);
    }
    if (Positive(infeasibility)) {
      solution.status = LpStatus::kInfeasible;
      return solution;
    }
    // Drive zero-valued artificials out of the basis; rows where that is
    // impossible are linearly dependent and dropped.
    for (std::size_t r = tab.rows(); r-- > 0;) {
      if (tab.basis()[r] < artificial_begin) continue;
      std::optional<std::size_t> col;
      for (std::size_t c = 0; c < artificial_begin && !col; ++c) {
        if (NonZero(tab.at(r, c))) col = c;
      }
      if (col) {
        tab.Pivot(r, *col);
      } else {
        tab.DropRow(r);
      }
    }
    for (std::size_t c = artificial_begin; c < total; ++c) allowed[c] = false;
  }

  std::vector<T> cost(total, T(0));
  for (std::size_t c = 0; c < n; ++c) cost[c] = lp.objective[c];
  if (RunSimplex(tab, cost, allowed) == PhaseResult::kUnbounded) {
    solution.status = LpStatus::kUnbounded;
    return solution;
  }

  solution.status = LpStatus::kOptimal;
  solution.x.assign(n, T(0));
  for (std::size_t r = 0; r < tab.rows(); ++r) {
    if (tab.basis()[r] < n) solution.x[tab.basis()[r]] = tab.rhs(r);
  }
  for (std::size_t c = 0; c < n; ++c) solution.value += lp.objective[c] * solution.x[c];
  return solution;
}

template LpSolution<double> SolveLinearProgram(const LinearProgram<double>&);
template LpSolution<Rational> SolveLinearProgram(const LinearProgram<Rational>&);

}  // namespace nonred

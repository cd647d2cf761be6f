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

#ifndef NONRED_LP_H_
#define NONRED_LP_H_

#include <cstddef>
#include <vector>

#include "nonred/scalar.h"

namespace nonred {

enum class ConstraintSense { kLessEqual, kGreaterEqual, kEqual };

// maximize objective . x  subject to  rows, x >= 0.
template <typename T>
struct LinearProgram {
  struct Row {
    std::vector<T> coefficients;
    ConstraintSense sense;
    T rhs;
  };
  std::size_t num_variables = 0;
  std::vector<T> objective;
  std::vector<Row> rows;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

template <typename T>
struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  T value = T(0);
  std::vector<T> x;
};

// Dense two-phase tableau simplex with Bland's rule, so it terminates without
// cycling. Exact for Rational; for double, entries within 1e-9 of zero are
// treated as zero.
template <typename T>
LpSolution<T> SolveLinearProgram(const LinearProgram<T>& lp);

}  // namespace nonred

#endif  // NONRED_LP_H_

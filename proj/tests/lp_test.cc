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

#include <gtest/gtest.h>

namespace nonred {
namespace {

using R = Rational;
using Sense = ConstraintSense;

template <typename T>
LinearProgram<T> TwoVariableProgram() {
  // max x + y  s.t.  x + 2y <= 4,  3x + y <= 6.
  LinearProgram<T> lp;
  lp.num_variables = 2;
  lp.objective = {T(1), T(1)};
  lp.rows.push_back({{T(1), T(2)}, Sense::kLessEqual, T(4)});
  lp.rows.push_back({{T(3), T(1)}, Sense::kLessEqual, T(6)});
  return lp;
}

TEST(LinearProgramTest, ExactOptimum) {
  const LpSolution<R> sol = SolveLinearProgram(TwoVariableProgram<R>());
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_EQ(sol.value, R(14, 5));
  EXPECT_EQ(sol.x, (std::vector<R>{R(8, 5), R(6, 5)}));
}

TEST(LinearProgramTest, FloatOptimum) {
  const LpSolution<double> sol = SolveLinearProgram(TwoVariableProgram<double>());
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.value, 2.8, 1e-12);
}

TEST(LinearProgramTest, EqualityAndGreaterEqual) {
  // max -x - y  s.t.  x + y = 3,  x >= 1 (as -x <= -1 rewritten),  y >= 1/2.
  LinearProgram<R> lp;
  lp.num_variables = 2;
  lp.objective = {R(-1), R(-2)};
  lp.rows.push_back({{R(1), R(1)}, Sense::kEqual, R(3)});
  lp.rows.push_back({{R(-1), R(0)}, Sense::kLessEqual, R(-1)});
  lp.rows.push_back({{R(0), R(1)}, Sense::kGreaterEqual, R(1, 2)});
  const LpSolution<R> sol = SolveLinearProgram(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_EQ(sol.x, (std::vector<R>{R(5, 2), R(1, 2)}));
  EXPECT_EQ(sol.value, R(-7, 2));
}

TEST(LinearProgramTest, Infeasible) {
  LinearProgram<R> lp;
  lp.num_variables = 1;
  lp.objective = {R(1)};
  lp.rows.push_back({{R(1)}, Sense::kGreaterEqual, R(2)});
  lp.rows.push_back({{R(1)}, Sense::kLessEqual, R(1)});
  EXPECT_EQ(SolveLinearProgram(lp).status, LpStatus::kInfeasible);
}

TEST(LinearProgramTest, Unbounded) {
  LinearProgram<R> lp;
  lp.num_variables = 2;
  lp.objective = {R(1), R(0)};
  lp.rows.push_back({{R(1), R(-1)}, Sense::kLessEqual, R(1)});
  EXPECT_EQ(SolveLinearProgram(lp).status, LpStatus::kUnbounded);
}

TEST(LinearProgramTest, RedundantEqualities) {
  // The second equality duplicates the first; phase 1 must drop it.
  LinearProgram<R> lp;
  lp.num_variables = 3;
  lp.objective = {R(0), R(0), R(1)};
  lp.rows.push_back({{R(1), R(1), R(1)}, Sense::kEqual, R(1)});
  lp.rows.push_back({{R(2), R(2), R(2)}, Sense::kEqual, R(2)});
  lp.rows.push_back({{R(0), R(0), R(1)}, Sense::kLessEqual, R(1, 3)});
  const LpSolution<R> sol = SolveLinearProgram(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_EQ(sol.value, R(1, 3));
}

}  // namespace
}  // namespace nonred

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

#include "nonred/oracle.h"

#include <gtest/gtest.h>

#include "nonred/error.h"
#include "nonred/game.h"
#include "nonred/linalg.h"

namespace nonred {
namespace {

using R = Rational;

TEST(PfaffianTest, SmallClosedForms) {
  EXPECT_EQ(Pfaffian(Matrix<R>(0, 0)), 1);
  EXPECT_EQ(Pfaffian(Matrix<R>(3, 3)), 0);
  const ExactGame g2 = ExactGame::FromUpperTriangle(2, {R(1, 3)});
  EXPECT_EQ(Pfaffian(g2.ToMatrix()), R(1, 3));
  // a12 a34 - a13 a24 + a14 a23
  const std::vector<R> u = {R(1, 2), R(1, 3), R(1, 5), R(1, 7), R(-1, 11), R(1, 13)};
  const ExactGame g4 = ExactGame::FromUpperTriangle(4, u);
  EXPECT_EQ(Pfaffian(g4.ToMatrix()), u[0] * u[5] - u[1] * u[4] + u[2] * u[3]);
  EXPECT_EQ(Pfaffian(ExtendedJanKen4().ToMatrix()), 1 * 1 - 1 * 1 + (-1) * 1);
}

TEST(PfaffianTest, SquareIsDeterminant) {
  for (int n : {2, 4, 6, 8}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const Matrix<R> m = RandomSkew(n, 7, seed).ToMatrix();
      const R pf = Pfaffian(m);
      EXPECT_EQ(pf * pf, Determinant(m)) << n << "/" << seed;
    }
  }
}

TEST(PfaffianTest, RejectsNonSkew) {
  Matrix<R> m(2, 2);
  m(0, 1) = 1;
  try {
    Pfaffian(m);
    ADD_FAILURE();
  } catch (const NonredError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotSkew);
  }
}

TEST(PrincipalPfaffiansTest, JanKen) {
  const PfaffianReport r = PrincipalPfaffians(JanKen());
  EXPECT_EQ(r.p, (std::vector<R>{R(1), R(-1), R(1)}));
  EXPECT_TRUE(r.nonzero);
  EXPECT_TRUE(r.alternating);
  EXPECT_FALSE(r.boundary);
  EXPECT_THROW(PrincipalPfaffians(ExtendedJanKen4()), NonredError);
}

TEST(PrincipalPfaffiansTest, CofactorIdentity) {
  const Matrix<R> m = QInstance(7, R(1, 10), R(1, 100)).ToMatrix();
  const PfaffianReport r = PrincipalPfaffians(ExactGame::FromUpperTriangle(
      7, QInstance(7, R(1, 10), R(1, 100)).upper()));
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = 0; j < 7; ++j) {
      const R sign = (i + j) % 2 == 0 ? R(1) : R(-1);
      EXPECT_EQ(sign * r.p[i] * r.p[j], Cofactor(m, i, j));
    }
  }
}

TEST(IsNonRedundantTest, NamedInstances) {
  EXPECT_TRUE(IsNonRedundant(JanKen()));
  EXPECT_FALSE(IsNonRedundant(ExtendedJanKen4()));
  EXPECT_FALSE(IsNonRedundant(EfronDiceGame()));
  EXPECT_TRUE(IsNonRedundant(ThreeByThree(R(3, 10), R(2, 5), R(1, 2))));
  EXPECT_TRUE(IsNonRedundant(ThreeByThree(R(-3, 10), R(-2, 5), R(-1, 2))));
  EXPECT_FALSE(IsNonRedundant(ThreeByThree(R(-3, 10), R(2, 5), R(1, 2))));
  EXPECT_FALSE(IsNonRedundant(ThreeByThree(R(0), R(2, 5), R(1, 2))));
}

TEST(IsNonRedundantTest, QFamilySignOfS) {
  const R kappa(1, 10);
  for (int n : {5, 7, 9}) {
    for (const R& s : {R(1, 100), R(1, 10), R(19, 100), R(-1, 100), R(0), R(1, 5)}) {
      const bool expected = s > 0 && s < 2 * kappa;
      EXPECT_EQ(IsNonRedundant(QInstance(n, kappa, s)), expected) << n << " " << s;
    }
  }
}

TEST(IsNonRedundantTest, FloatInputWarns) {
  std::vector<std::string> warnings;
  EXPECT_TRUE(IsNonRedundant(ToFloat(JanKen()), &warnings));
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_EQ(RunOracle(ToFloat(JanKen())).warnings.size(), 1u);
}

TEST(NashFromPfaffiansTest, MatchesKernel) {
  EXPECT_EQ(NashFromPfaffians(JanKen()).weights(),
            (std::vector<R>{R(1, 3), R(1, 3), R(1, 3)}));
  const ExactGame q = QInstance(5, R(3, 10), R(1, 5));
  EXPECT_EQ(NashFromPfaffians(q), KernelNash(q));
  try {
    NashFromPfaffians(QInstance(5, R(3, 10), R(-1, 5)));
    ADD_FAILURE();
  } catch (const NonredError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotCompletelyMixed);
  }
}

TEST(AlphaRedundancyTest, EfronAndQ) {
  EXPECT_EQ(BestEquilibriumMinCoordinate(EfronDiceGame()), R(3, 13));
  EXPECT_TRUE(IsAlphaRedundant(EfronDiceGame(), R(1, 4)));
  EXPECT_FALSE(IsAlphaRedundant(EfronDiceGame(), R(3, 13)));

  // pi_min of Q(7, 1/10, 1/20) is 1/11.
  const ExactGame q = QInstance(7, R(1, 10), R(1, 20));
  EXPECT_EQ(BestEquilibriumMinCoordinate(q), R(1, 11));
  EXPECT_FALSE(IsAlphaRedundant(q, R(1, 11)));
  EXPECT_TRUE(IsAlphaRedundant(q, R(1, 10)));
  EXPECT_TRUE(IsAlphaRedundant(QInstance(5, R(3, 10), R(-1, 5)), R(1, 20)));
  EXPECT_THROW(IsAlphaRedundant(q, R(1, 5)), NonredError);
}

TEST(RunOracleTest, Report) {
  const OracleReport r = RunOracle(QInstance(7, R(1, 10), R(1, 20)));
  EXPECT_TRUE(r.non_redundant);
  EXPECT_EQ(r.equilibrium,
            (std::vector<R>{R(2, 11), R(1, 11), R(1, 11), R(3, 11), R(1, 11), R(1, 11),
                            R(2, 11)}));
  EXPECT_EQ(r.pi_min, R(1, 11));
  const OracleReport e = RunOracle(ExtendedJanKen4());
  EXPECT_FALSE(e.non_redundant);
  EXPECT_TRUE(e.pfaffians.empty());
}

}  // namespace
}  // namespace nonred

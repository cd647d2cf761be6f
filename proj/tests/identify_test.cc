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

#include "nonred/identify.h"

#include <cmath>
#include <optional>

#include <gtest/gtest.h>

#include "nonred/error.h"
#include "nonred/game.h"
#include "nonred/polytope.h"
#include "nonred/rng.h"

namespace nonred {
namespace {

using R = Rational;

TEST(HoeffdingRoundsTest, Formula) {
  EXPECT_EQ(HoeffdingRounds(0.2, 0.1, 5),
            static_cast<std::int64_t>(std::ceil(50.0 * std::log(500.0))));
  EXPECT_EQ(HoeffdingRounds(0.2, 0.1, 5), 311);
  const double eps = std::sqrt(2.0 * std::log(2.0 * 25 / 0.1));
  EXPECT_EQ(HoeffdingRounds(eps, 0.1, 5), 1);
  EXPECT_THROW(HoeffdingRounds(0.0, 0.1, 5), NonredError);
  EXPECT_THROW(HoeffdingRounds(0.1, 1.0, 5), NonredError);
}

TEST(RoundCapTest, Formula) {
  const double expected = std::ceil(2.0 * 100.0 / 0.01 * std::log(50.0 / 0.05)) + 1;
  EXPECT_EQ(Algorithm1RoundCap(0.1, 0.05, 10.0, 5), static_cast<std::int64_t>(expected));
}

TEST(IdentifyTest, NoiselessNonRedundantFiresBranchA) {
  const ExactGame q = QInstance(5, R(3, 10), R(1, 5));
  const double phi = 50.0 / 3.0, pi_min = 1.0 / 7.0;
  const double alpha = 0.05, delta = 0.05;
  DuelEnv env(q, NoiseModel::kNoiseless, 1);
  const IdentifyResult r = Identify(env, alpha, delta, 2 * phi);
  EXPECT_EQ(r.conclusion.verdict, Verdict::kNonRedundant);
  EXPECT_EQ(r.conclusion.branch, Branch::kA);
  // With A-hat = A, branch (a) fires at the first t above its threshold.
  const double threshold = 2 * phi * phi / (pi_min * pi_min) * std::log(50.0 / delta);
  EXPECT_EQ(r.trace.rounds, static_cast<std::int64_t>(std::floor(threshold)) + 1);
  EXPECT_LE(r.trace.rounds, r.trace.round_cap);
  EXPECT_EQ(env.rounds_used(), r.trace.rounds);
  ASSERT_FALSE(r.trace.records.empty());
  EXPECT_TRUE(r.trace.records.back().fired);
  EXPECT_EQ(r.trace.records.back().t, r.trace.rounds);
  EXPECT_NEAR(r.trace.final_phi, phi, 1e-9);
  EXPECT_NEAR(r.trace.final_pi_min, pi_min, 1e-12);
}

TEST(IdentifyTest, NoiselessRedundantFiresBranchB) {
  const ExactGame q = QInstance(5, R(3, 10), R(-1, 5));
  const double phi = 70.0 / 3.0;
  DuelEnv env(q, NoiseModel::kNoiseless, 1);
  const IdentifyResult r = Identify(env, 0.05, 0.05, 2 * phi);
  EXPECT_EQ(r.conclusion.verdict, Verdict::kAlphaRedundant);
  EXPECT_EQ(r.conclusion.branch, Branch::kB);
  const double threshold = 2 * phi * phi / (0.05 * 0.05) * std::log(50.0 / 0.05);
  EXPECT_EQ(r.trace.rounds, static_cast<std::int64_t>(std::floor(threshold)) + 1);
}

// phi = 32, pi_min = 1/54, and every vertex stays positive for eps < 1/90.
ExactGame WideMarginGame() {
  std::vector<R> upper;
  for (const char* x : {"1", "-1/4", "0", "0", "3/4", "1", "1/2", "-1", "3/4", "-1/4"}) {
    upper.push_back(ParseRational(x));
  }
  return ExactGame::FromUpperTriangle(5, upper);
}

TEST(IdentifyTest, HorizonBranches) {
  const ExactGame g = WideMarginGame();
  ASSERT_EQ(Phi(g), 32);
  // U < phi keeps branch (b) beyond the horizon and U / alpha < phi / pi_min
  // keeps branch (a) beyond it too, so the run ends at T.
  DuelEnv env(g, NoiseModel::kNoiseless, 1);
  const IdentifyResult c = Identify(env, 0.01, 0.05, 2.0);  // eps = 1/200
  EXPECT_EQ(c.trace.rounds, c.trace.round_cap);
  EXPECT_EQ(c.conclusion.branch, Branch::kC);
  EXPECT_EQ(c.conclusion.verdict, Verdict::kNonRedundant);
  DuelEnv env2(g, NoiseModel::kNoiseless, 1);
  const IdentifyResult d = Identify(env2, 0.2, 0.05, 1.0);  // eps = 1/5
  EXPECT_EQ(d.trace.rounds, d.trace.round_cap);
  EXPECT_EQ(d.conclusion.branch, Branch::kD);
}

// Literal transcription of the general algorithm on top of the generic polytope
// routines, recomputing every column every round.
Conclusion ReferenceAlgorithm1(DuelEnv& env, double alpha, double delta, double big_u,
                               std::int64_t* rounds) {
  const int n = env.n();
  const double log_term = std::log(2.0 * n * n / delta);
  const std::int64_t cap = Algorithm1RoundCap(alpha, delta, big_u, n);
  std::vector<double> sums(FloatGame::UpperSize(n), 0.0);
  std::optional<ColumnReplacementSolution<double>> last;
  for (std::int64_t t = 1; t <= cap; ++t) {
    const auto x = env.SampleRound();
    for (std::size_t k = 0; k < sums.size(); ++k) sums[k] += x[k];
    Matrix<double> a(n, n);
    std::size_t k = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j, ++k) {
        a(i, j) = sums[k] / static_cast<double>(t);
        a(j, i) = -a(i, j);
      }
    }
    *rounds = t;
    last.reset();
    try {
      last = SolveColumnReplacements(a);
    } catch (const NonredError&) {
      continue;
    }
    const double phi = PhiFromSolution(*last);
    double pi_min = last->pi[0];
    for (double p : last->pi) pi_min = std::min(pi_min, p);
    if (static_cast<double>(t) > 2 * phi * phi / (pi_min * pi_min) * log_term && pi_min > 0) {
      return {Verdict::kNonRedundant, Branch::kA};
    }
    if (static_cast<double>(t) > 2 * phi * phi / (alpha * alpha) * log_term) {
      const EpsilonPolytope<double> p = VerticesFromSolution(*last, alpha / phi);
      bool all_below = true;
      for (int j = 0; j < n; ++j) all_below = all_below && MinVertexCoordinate(p, j) < alpha;
      if (all_below) return {Verdict::kAlphaRedundant, Branch::kB};
    }
  }
  if (!last) return {Verdict::kAlphaRedundant, Branch::kD};
  const EpsilonPolytope<double> p = VerticesFromSolution(*last, alpha / big_u);
  for (int j = 0; j < n; ++j) {
    if (!(MinVertexCoordinate(p, j) > 0)) return {Verdict::kAlphaRedundant, Branch::kD};
  }
  return {Verdict::kNonRedundant, Branch::kC};
}

TEST(IdentifyTest, AgreesWithLiteralTranscription) {
  struct Case {
    ExactGame game;
    double alpha, delta, big_u;
  };
  const std::vector<Case> cases = {
      {QInstance(5, R(3, 10), R(3, 10)), 0.2, 0.2, 20.0},
      {QInstance(5, R(3, 10), R(-1, 5)), 0.2, 0.5, 46.0},
      {WideMarginGame(), 0.05, 0.3, 3.0},
  };
  for (const Case& c : cases) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      DuelEnv fast(c.game, NoiseModel::kGaussianUnit, seed);
      DuelEnv slow(c.game, NoiseModel::kGaussianUnit, seed);
      const IdentifyResult r = Identify(fast, c.alpha, c.delta, c.big_u);
      std::int64_t rounds = 0;
      const Conclusion ref = ReferenceAlgorithm1(slow, c.alpha, c.delta, c.big_u, &rounds);
      EXPECT_EQ(r.conclusion.branch, ref.branch) << seed;
      EXPECT_EQ(r.trace.rounds, rounds) << seed;
    }
  }
}

TEST(IdentifyTest, SingularEstimatesAreGuarded) {
  const ExactGame zero = ExactGame::FromUpperTriangle(5, std::vector<R>(10, R(0)));
  DuelEnv env(zero, NoiseModel::kNoiseless, 1);
  const IdentifyResult r = Identify(env, 0.2, 0.5, 1.0);
  EXPECT_EQ(r.trace.rounds, r.trace.round_cap);
  EXPECT_EQ(r.conclusion.branch, Branch::kD);
  EXPECT_EQ(r.trace.guard_count(GuardKind::kAllSingular), r.trace.rounds);
  EXPECT_EQ(r.trace.guard_count(GuardKind::kFinalUnavailable), 1);
}

TEST(IdentifyTest, SkewEstimateAndCap) {
  const ExactGame q = QInstance(5, R(3, 10), R(1, 5));
  DuelEnv env(q, NoiseModel::kGaussianUnit, 12);
  const IdentifyResult r = Identify(env, 0.2, 0.2, 30.0);
  EXPECT_LE(r.trace.rounds, r.trace.round_cap);
  EXPECT_EQ(r.trace.final_upper.size(), 10u);
  EXPECT_GT(r.trace.complexity_scale, 0.0);
}

TEST(IdentifyTest, Preconditions) {
  DuelEnv three(JanKen(), NoiseModel::kNoiseless, 1);
  EXPECT_THROW(Identify(three, 0.05, 0.1, 2.0), NonredError);
  DuelEnv four(ExtendedJanKen4(), NoiseModel::kNoiseless, 1);
  EXPECT_THROW(Identify(four, 0.05, 0.1, 2.0), NonredError);
  DuelEnv five(QInstance(5, R(3, 10), R(1, 5)), NoiseModel::kNoiseless, 1);
  EXPECT_THROW(Identify(five, 0.25, 0.1, 2.0), NonredError);
  EXPECT_THROW(Identify(five, 0.05, 0.0, 2.0), NonredError);
  EXPECT_THROW(Identify(five, 0.05, 0.1, 0.5), NonredError);
}

TEST(Identify3x3Test, JanKenNoiseless) {
  DuelEnv env(JanKen(), NoiseModel::kNoiseless, 1);
  const IdentifyResult r = Identify3x3(env, 0.1);
  EXPECT_EQ(r.conclusion.verdict, Verdict::kNonRedundant);
  EXPECT_EQ(r.conclusion.branch, Branch::kSameSign);
  EXPECT_EQ(r.trace.rounds, static_cast<std::int64_t>(std::floor(18.0 * std::log(20.0))) + 1);
}

TEST(Identify3x3Test, SignCharacterization) {
  DuelEnv pos(ThreeByThree(R(3, 10), R(2, 5), R(1, 2)), NoiseModel::kNoiseless, 1);
  EXPECT_EQ(Identify3x3(pos, 0.1).conclusion.verdict, Verdict::kNonRedundant);
  DuelEnv flip(ThreeByThree(R(-3, 10), R(2, 5), R(1, 2)), NoiseModel::kNoiseless, 1);
  const IdentifyResult r = Identify3x3(flip, 0.1);
  EXPECT_EQ(r.conclusion.verdict, Verdict::kAlphaRedundant);
  EXPECT_EQ(r.conclusion.branch, Branch::kMixedSign);
}

TEST(Identify3x3Test, ZeroGapHitsCap) {
  DuelEnv env(ThreeByThree(R(0), R(2, 5), R(1, 2)), NoiseModel::kNoiseless, 1);
  IdentifyOptions options;
  options.max_rounds_3x3 = 100;
  const IdentifyResult r = Identify3x3(env, 0.1, options);
  EXPECT_EQ(r.trace.rounds, 100);
  EXPECT_EQ(r.trace.guard_count(GuardKind::kDeltaZero), 100);
  EXPECT_EQ(r.trace.guard_count(GuardKind::kRoundCap), 1);
  EXPECT_EQ(r.conclusion.verdict, Verdict::kAlphaRedundant);
  DuelEnv five(QInstance(5, R(3, 10), R(1, 5)), NoiseModel::kNoiseless, 1);
  EXPECT_THROW(Identify3x3(five, 0.1), NonredError);
}

TEST(RunIdentificationTest, AutoDispatch) {
  DuelEnv three(JanKen(), NoiseModel::kNoiseless, 1);
  EXPECT_EQ(RunIdentification(three, Algorithm::kAuto, 0.1, 0.1, 2.0).conclusion.branch,
            Branch::kSameSign);
  EXPECT_EQ(ParseAlgorithm("alg1"), Algorithm::kAlg1);
  EXPECT_THROW(ParseAlgorithm("alg3"), NonredError);
}

// The allocation-free solver used per round must agree with the generic
// float route in the polytope module.
TEST(WorkspaceTest, MatchesGenericRoute) {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = trial % 2 == 0 ? 5 : 7;
    std::vector<double> upper(SkewGame<double>::UpperSize(n));
    for (double& x : upper) x = 2.0 * rng.NextUniform() - 1.0;
    const FloatGame g = FloatGame::FromUpperTriangle(n, upper);
    const Matrix<double> m = g.ToMatrix();
    std::vector<double> full(m.data().begin(), m.data().end());
    ColumnReplacementWorkspace ws(n);
    ASSERT_EQ(ws.Compute(full), ColumnReplacementWorkspace::Status::kOk);
    const auto sol = SolveColumnReplacements(m);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(ws.pi()[i], sol.pi[i], 1e-9);
    EXPECT_NEAR(ws.phi(), PhiFromSolution(sol), 1e-8 * std::max(1.0, ws.phi()));
    const double eps = 0.01;
    const EpsilonPolytope<double> p = VerticesFromSolution(sol, eps);
    for (int j = 0; j < n; ++j) {
      EXPECT_NEAR(ws.MinVertexCoordinate(j, eps), MinVertexCoordinate(p, j), 1e-9);
    }
  }
}

}  // namespace
}  // namespace nonred

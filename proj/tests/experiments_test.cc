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

#include "nonred/experiments.h"

#include <cmath>

#include <gtest/gtest.h>

#include "nonred/error.h"

namespace nonred {
namespace {

using R = Rational;

TEST(KlNormalTest, ReferenceValues) {
  EXPECT_NEAR(KlNormal(0.1, -0.1, 1, 1), 2 * 0.01, 1e-15);
  EXPECT_DOUBLE_EQ(KlNormal(0.3, 0.3, 2, 2), 0.0);
  EXPECT_DOUBLE_EQ(KlNormal(0, 1, 1, 1), 0.5);
  EXPECT_NEAR(KlNormal(0, 0, 1, 2), 0.5 * (0.25 - std::log(0.25) - 1), 1e-15);
  try {
    KlNormal(0, 0, 0, 1);
    ADD_FAILURE();
  } catch (const NonredError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonpositiveVariance);
  }
  EXPECT_DOUBLE_EQ(KlLowerLine(0.1, 0.05), 50.0 * std::log(5.0 / 0.6));
}

TEST(InstanceTest, BuildAndDescribe) {
  InstanceSpec spec;
  spec.n = 7;
  spec.kappa = R(1, 10);
  spec.s = R(1, 100);
  EXPECT_EQ(BuildInstance(spec), QInstance(7, R(1, 10), R(1, 100)));
  EXPECT_EQ(DescribeInstance(spec), "q(7,1/10,1/100)");
  spec.family = "jan_ken";
  EXPECT_EQ(BuildInstance(spec), JanKen());
  spec.family = "nope";
  EXPECT_THROW(BuildInstance(spec), NonredError);
}

TEST(GroundTruthTest, QInstances) {
  const GroundTruth t = ComputeGroundTruth(QInstance(5, R(3, 10), R(1, 5)));
  EXPECT_TRUE(t.non_redundant);
  EXPECT_TRUE(t.phi_defined);
  EXPECT_EQ(t.phi, R(50, 3));
  EXPECT_EQ(t.pi_min, R(1, 7));
  const GroundTruth z = ComputeGroundTruth(QInstance(7, R(1, 10), R(0)));
  EXPECT_TRUE(z.condition1);
  EXPECT_EQ(z.pi_min, 0);
  EXPECT_FALSE(z.non_redundant);
  const GroundTruth e = ComputeGroundTruth(ExtendedJanKen4());
  EXPECT_FALSE(e.condition1);
}

TEST(CorrectVerdictTest, AcceptanceRules) {
  EXPECT_TRUE(IsCorrectVerdict(Verdict::kNonRedundant, true, true, false));
  EXPECT_FALSE(IsCorrectVerdict(Verdict::kAlphaRedundant, true, true, false));
  EXPECT_TRUE(IsCorrectVerdict(Verdict::kAlphaRedundant, true, true, true));
  EXPECT_TRUE(IsCorrectVerdict(Verdict::kNonRedundant, true, true, true));
  EXPECT_FALSE(IsCorrectVerdict(Verdict::kNonRedundant, true, false, true));
  EXPECT_TRUE(IsCorrectVerdict(Verdict::kAlphaRedundant, false, false, false));
  EXPECT_FALSE(IsCorrectVerdict(Verdict::kAlphaRedundant, false, true, false));
}

TEST(RunTrialsTest, NoiselessCellIsAlwaysCorrect) {
  GridCell cell;
  cell.instance.family = "three";
  cell.instance.a = R(3, 10);
  cell.instance.b = R(2, 5);
  cell.instance.c = R(1, 2);
  cell.noise = NoiseModel::kNoiseless;
  cell.delta = 0.1;
  cell.trials = 5;
  const CellSummary s = RunTrials(cell, 2);
  EXPECT_EQ(s.correct_rate, 1.0);
  EXPECT_FALSE(s.uses_alg1);
  EXPECT_EQ(s.branch_histogram.at("same_sign"), 5);
  EXPECT_EQ(s.p50_rounds, s.p95_rounds);
}

TEST(RunTrialsTest, DeterministicAcrossThreadCounts) {
  GridCell cell;
  cell.instance.family = "three";
  cell.instance.a = R(3, 10);
  cell.instance.b = R(2, 5);
  cell.instance.c = R(1, 2);
  cell.noise = NoiseModel::kGaussianUnit;
  cell.delta = 0.1;
  cell.trials = 12;
  cell.seed = 77;
  const CellSummary one = RunTrials(cell, 1);
  const CellSummary four = RunTrials(cell, 4);
  EXPECT_EQ(CsvRow(one), CsvRow(four));
  for (int k = 0; k < 12; ++k) {
    EXPECT_EQ(one.records[k].rounds, four.records[k].rounds);
    EXPECT_EQ(one.records[k].seed, four.records[k].seed);
  }
}

TEST(SweepGridTest, ParsesAndEnumerates) {
  const SweepGrid grid = ParseSweepGrid(R"({
      "instance": {"family": "q", "n": [5], "kappa": ["3/10"], "s": ["-alpha", 0.2]},
      "alpha": [0.2, 0.1], "delta": 0.05, "U": "2phi",
      "noise": ["noiseless"], "trials": 2, "seed": 5})");
  ASSERT_EQ(grid.cells.size(), 4u);
  EXPECT_EQ(grid.cells[0].instance.s, R(-1, 5));
  EXPECT_EQ(grid.cells[1].instance.s, R(-1, 10));
  EXPECT_EQ(grid.cells[2].instance.s, R(1, 5));
  ASSERT_TRUE(grid.cells[0].u_phi_multiple.has_value());
  EXPECT_EQ(*grid.cells[0].u_phi_multiple, 2.0);
  EXPECT_NE(grid.cells[0].seed, grid.cells[1].seed);
  const SweepGrid other = ParseSweepGrid(R"({"U": "10n2", "instance": {"n": 7}})", 9);
  ASSERT_EQ(other.cells.size(), 1u);
  EXPECT_EQ(other.cells[0].big_u, 490.0);
  EXPECT_THROW(ParseSweepGrid("[1,2]"), NonredError);
  EXPECT_THROW(ParseSweepGrid(R"({"noise": ["laplace"]})"), NonredError);
  EXPECT_THROW(ParseSweepGrid(R"({"family": "q"})"), NonredError);
  EXPECT_THROW(ParseSweepGrid(R"({"instance": {"kapa": "1/10"}})"), NonredError);
}

TEST(SweepTest, CsvColumnsAndReproducibility) {
  const char* text = R"({
      "instance": {"family": "q", "n": 5, "kappa": "3/10", "s": ["-alpha"]},
      "alpha": [0.2], "delta": [0.05], "U": "2phi",
      "noise": ["noiseless"], "trials": 1, "seed": 3})";
  const std::string a = SweepCsv(Sweep(ParseSweepGrid(text)));
  const std::string b = SweepCsv(Sweep(ParseSweepGrid(text)));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.substr(0, kCsvHeader.size()), kCsvHeader);
  // T_bound and the KL line are pure functions of the parameter columns.
  const double phi = 70.0 / 3.0;
  const auto t = Algorithm1RoundCap(0.2, 0.05, 2 * phi, 5);
  EXPECT_NE(a.find("," + std::to_string(t) + ","), std::string::npos) << a;
}

TEST(VerifyQTest, PassesOnSmallGrid) {
  const VerifyReport r =
      VerifyQ({5, 7, 9}, R(1, 10), {R(1, 100), R(-1, 100), R(1, 1000)});
  EXPECT_TRUE(r.all_passed()) << r.ToJson();
  int applicable_vi = 0;
  for (const VerifyCheck& c : r.checks) applicable_vi += c.id == "vi" && c.applicable;
  EXPECT_EQ(applicable_vi, 6);
}

TEST(VerifyQTest, BoundaryS) {
  const VerifyReport r = VerifyQ({5}, R(1, 10), {R(1, 5)});
  for (const VerifyCheck& c : r.checks) {
    if (c.id == "v") EXPECT_TRUE(c.passed);
    if (c.id == "i") EXPECT_TRUE(c.passed);
  }
}

TEST(RankFrequencyTest, EvenRanksAndBound) {
  const RankFrequencyReport r = RankFrequency(5, 16, 500, 1);
  EXPECT_TRUE(r.all_even);
  EXPECT_TRUE(r.passed());
  const RankFrequencyReport small = RankFrequency(5, 1, 500, 1);
  EXPECT_LT(small.full_rank_frequency, r.full_rank_frequency);
  const RankFrequencyReport three = RankFrequency(3, 16, 200, 2);
  for (const auto& [rank, count] : three.rank_counts) EXPECT_TRUE(rank == 0 || rank == 2);
  EXPECT_THROW(RankFrequency(4, 16, 500, 1), NonredError);
  EXPECT_THROW(RankFrequency(5, 16, 50, 1), NonredError);
}

}  // namespace
}  // namespace nonred

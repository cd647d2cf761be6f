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

#ifndef NONRED_IDENTIFY_H_
#define NONRED_IDENTIFY_H_

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "nonred/bandit_env.h"

namespace nonred {

// ceil((2 / eps^2) log(2 n^2 / delta)).
std::int64_t HoeffdingRounds(double epsilon, double delta, int n);

// T = ceil((2 U^2 / alpha^2) log(2 n^2 / delta)) + 1.
std::int64_t Algorithm1RoundCap(double alpha, double delta, double big_u, int n);

enum class Verdict { kNonRedundant, kAlphaRedundant };

enum class Branch {
  kA,          // early non-redundant
  kB,          // early alpha-redundant
  kC,          // non-redundant after T rounds
  kD,          // alpha-redundant after T rounds
  kSameSign,   // 3x3: all three estimates share a sign
  kMixedSign,  // 3x3: otherwise
};

const char* VerdictName(Verdict verdict);
const char* BranchName(Branch branch);

struct Conclusion {
  Verdict verdict = Verdict::kAlphaRedundant;
  Branch branch = Branch::kD;
};

enum class GuardKind {
  kColumnRetry,       // A_1 estimate singular, pi taken from a later column
  kAllSingular,       // every column replacement singular this round
  kPartialSingular,   // some column replacement singular, phi undefined
  kPhiDegenerate,     // phi estimate zero or not finite
  kFinalUnavailable,  // no usable estimate after T rounds; concluded (d)
  kDeltaZero,         // 3x3: smallest estimated gap is exactly zero
  kRoundCap,          // 3x3: safety cap reached before the stopping rule
};
inline constexpr int kNumGuardKinds = 7;

const char* GuardKindName(GuardKind kind);

struct GuardEvent {
  std::int64_t t = 0;
  GuardKind kind = GuardKind::kColumnRetry;
};

struct RoundRecord {
  std::int64_t t = 0;
  double phi = 0.0;      // NaN when undefined this round
  double pi_min = 0.0;   // NaN when undefined; for 3x3 this is the gap estimate
  bool time_a = false;   // time condition of branch (a) met
  bool time_b = false;   // time condition of branch (b) met
  bool fired = false;
  bool guarded = false;
};

struct RunTrace {
  std::int64_t rounds = 0;
  std::int64_t round_cap = 0;
  std::vector<RoundRecord> records;
  std::vector<GuardEvent> guard_events;  // first few events only
  std::array<std::int64_t, kNumGuardKinds> guard_counts{};
  std::vector<double> final_upper;  // final estimate, upper triangle
  double final_phi = 0.0;
  double final_pi_min = 0.0;
  // U^2 / max(alpha^2, pi_min^2) * log(n / delta) with the final pi_min
  // estimate; the shape of the upper bound, reported but never asserted.
  double complexity_scale = 0.0;

  std::int64_t guard_count(GuardKind kind) const {
    return guard_counts[static_cast<int>(kind)];
  }
};

struct IdentifyOptions {
  // Record every k-th round; 0 records rounds 1, 2, 4, 8, ... The last round
  // is always recorded.
  std::int64_t record_every = 0;
  std::size_t max_guard_events = 64;
  // Safety cap for the 3x3 algorithm, which has no built-in horizon.
  std::int64_t max_rounds_3x3 = std::int64_t{1} << 34;
};

struct IdentifyResult {
  Conclusion conclusion;
  RunTrace trace;
};

// General identification algorithm. Needs odd n >= 5 (kBadDimension), alpha in (0, 1/n],
// delta in (0, 1) and U >= 1 (kInvalidArgument).
IdentifyResult Identify(DuelEnv& env, double alpha, double delta, double big_u,
                        const IdentifyOptions& options = {});

// Sign-based procedure for 3x3 games. Needs n = 3 (kBadDimension) and delta in (0, 1).
IdentifyResult Identify3x3(DuelEnv& env, double delta,
                           const IdentifyOptions& options = {});

enum class Algorithm { kAuto, kAlg1, kAlg2 };
Algorithm ParseAlgorithm(std::string_view name);

// kAuto picks the 3x3 procedure for n = 3 and the general algorithm otherwise.
IdentifyResult RunIdentification(DuelEnv& env, Algorithm algorithm,
                                 double alpha, double delta, double big_u,
                                 const IdentifyOptions& options = {});

// Float column-replacement solver reused across rounds without allocation.
// Given a full n x n matrix it computes r_j = 1^T A_j^{-1} for every j, and
// pi = e_j^T A_j^{-1} from the first non-singular A_j.
//
// Columns can be solved lazily: Begin() finds pi, Ensure(j) adds one column
// and SolvedPhi() is the maximum over the columns solved so far, a lower
// bound on phi that lets a caller skip rounds whose thresholds cannot be met.
class ColumnReplacementWorkspace {
 public:
  enum class Status { kOk, kAllSingular, kPartialSingular };

  explicit ColumnReplacementWorkspace(int n);

  // `a` is row-major n x n. Solves every column.
  Status Compute(const std::vector<double>& a);

  // Resets and solves columns 0, 1, ... until pi is found. False when every
  // column is singular.
  bool Begin(const std::vector<double>& a);
  // Solves column j unless already done; false if A_j is singular.
  bool Ensure(int j);
  // Solves the remaining columns.
  Status Finish();

  int pi_column() const { return pi_column_; }
  const std::vector<double>& pi() const { return pi_; }
  double pi_min() const;
  // max_{j,i} |r_j[i] - pi[i]|. Valid after kOk.
  double phi() const;
  // The same maximum over the columns solved so far.
  double SolvedPhi() const;
  // Column attaining SolvedPhi().
  int ArgmaxColumn() const;
  // min_i of pi - eps (r_j - pi). Valid after kOk.
  double MinVertexCoordinate(int j, double epsilon) const;

 private:
  enum class ColumnState : char { kPending, kOk, kSingular };
  bool SolveColumn(int j);
  double ColumnDeviation(int j) const;

  int n_;
  const std::vector<double>* a_ = nullptr;
  int pi_column_ = -1;
  std::vector<double> work_;  // n x (n + 2) augmented system
  std::vector<double> pi_;
  std::vector<double> rows_;  // n x n, row j = r_j
  std::vector<ColumnState> state_;
};

}  // namespace nonred

#endif  // NONRED_IDENTIFY_H_

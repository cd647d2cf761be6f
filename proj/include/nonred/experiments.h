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

#ifndef NONRED_EXPERIMENTS_H_
#define NONRED_EXPERIMENTS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nonred/bandit_env.h"
#include "nonred/game.h"
#include "nonred/identify.h"
#include "nonred/scalar.h"

namespace nonred {

// ---------------------------------------------------------------------------
// Instances

struct InstanceSpec {
  // One of "q", "jan_ken", "ext_jan_ken4", "efron", "three", "random", "file".
  std::string family = "q";
  int n = 5;
  Rational kappa = Rational(3, 10);
  Rational s = Rational(1, 5);
  Rational a = 0, b = 0, c = 0;  // family "three"
  int q = 16;                    // family "random"
  std::uint64_t seed = 1;        // family "random"
  std::string path;              // family "file"
};

ExactGame BuildInstance(const InstanceSpec& spec);
// Short stable label such as "q(5,3/10,1/5)".
std::string DescribeInstance(const InstanceSpec& spec);

// Exact facts about an instance, computed once and shared by all trials.
struct GroundTruth {
  bool non_redundant = false;
  bool condition1 = false;     // rank n-1 and some A_j invertible
  bool phi_defined = false;    // condition1 and every A_j invertible
  Rational phi = 0;            // valid when phi_defined
  Rational pi_min = 0;         // kernel solution min coordinate, when condition1
  Rational best_equilibrium_min = 0;
};

GroundTruth ComputeGroundTruth(const ExactGame& game);

// ---------------------------------------------------------------------------
// Monte-Carlo trials

struct GridCell {
  InstanceSpec instance;
  double alpha = 0.05;
  double delta = 0.05;
  // Absolute U, used when u_phi_multiple is unset.
  double big_u = 0.0;
  // U = multiple * phi(A) when set.
  std::optional<double> u_phi_multiple;
  NoiseModel noise = NoiseModel::kGaussianUnit;
  Algorithm algorithm = Algorithm::kAuto;
  int trials = 10;
  std::uint64_t seed = 1;  // cell seed; trial k uses DeriveStreamSeed(seed, kTrialSeed, k)
};

struct TrialRecord {
  std::string instance;
  std::uint64_t seed = 0;
  double alpha = 0.0, delta = 0.0, big_u = 0.0;
  NoiseModel noise = NoiseModel::kGaussianUnit;
  Conclusion conclusion;
  std::int64_t rounds = 0;
  std::int64_t round_cap = 0;
  bool correct = false;
  std::int64_t guard_events = 0;
  double wall_seconds = 0.0;
};

struct CellSummary {
  std::string instance;
  int n = 0;
  GridCell cell;
  double big_u = 0.0;  // resolved U
  bool uses_alg1 = true;
  GroundTruth truth;
  bool alpha_redundant = false;  // truth at this cell's alpha (general algorithm only)
  int trials = 0;
  int correct = 0;
  double correct_rate = 0.0;
  double mean_rounds = 0.0;
  std::int64_t p50_rounds = 0;
  std::int64_t p95_rounds = 0;
  std::int64_t max_rounds = 0;
  std::map<std::string, int> branch_histogram;
  std::int64_t t_bound = 0;  // horizon of the general algorithm; 0 for the 3x3 procedure
  double kl_lower_line = 0.0;
  std::vector<TrialRecord> records;  // in trial order
};

// Verdict accepted for the general algorithm: "non-redundant" iff the game is
// non-redundant, "alpha-redundant" iff no equilibrium clears alpha. When a
// non-redundant game is also alpha-redundant both answers are accepted.
// The 3x3 procedure must match the exact non-redundancy verdict.
bool IsCorrectVerdict(Verdict verdict, bool uses_alg1, bool non_redundant,
                      bool alpha_redundant);

// Runs cell.trials independent trials on `threads` workers (0 = hardware
// concurrency). Results are folded in trial order, so the summary does not
// depend on scheduling (wall times aside).
CellSummary RunTrials(const GridCell& cell, int threads = 0);

// ---------------------------------------------------------------------------
// Sweeps

struct SweepGrid {
  std::vector<GridCell> cells;
  int threads = 0;
};

// Grid descriptor, e.g.
//   {"instance": {"family": "q", "n": [5], "kappa": ["3/10"],
//                 "s": ["-alpha"]},
//    "alpha": [0.2, 0.1], "delta": [0.05], "U": "2phi",
//    "noise": ["gaussian_unit"], "algorithm": "auto",
//    "trials": 20, "seed": 7, "threads": 0}
// "s" entries may be "alpha" or "-alpha" to follow the cell's alpha. "U" is a
// number, "<k>phi" (k times phi(A)) or "<k>n2" (k n^2). Cells enumerate in
// the order n, kappa, s, alpha, delta, noise; cell i gets seed
// DeriveStreamSeed(seed, kCellSeed, i). Throws kParseError.
SweepGrid ParseSweepGrid(std::string_view json_text,
                         std::optional<std::uint64_t> seed_override = {});

std::vector<CellSummary> Sweep(const SweepGrid& grid);

inline constexpr std::string_view kCsvHeader =
    "instance,n,kappa,s,alpha,delta,U,noise,trials,correct_rate,mean_rounds,"
    "p50_rounds,p95_rounds,phi,pi_min,T_bound,kl_lower_line";

// One CSV row (no trailing newline). Bit-for-bit reproducible.
std::string CsvRow(const CellSummary& summary);
std::string SweepCsv(const std::vector<CellSummary>& summaries);

// ---------------------------------------------------------------------------
// Exact verification of the Q family

struct VerifyCheck {
  int n = 0;
  Rational s = 0;
  std::string id;  // "i", "ii", "ii_mid", "iii", "iv", "v", "vi"
  bool applicable = true;
  bool passed = true;
  std::string detail;  // witness on failure, reason when not applicable
};

struct VerifyReport {
  Rational kappa = 0;
  std::vector<VerifyCheck> checks;
  bool all_passed() const;
  std::string ToJson() const;
};

// Checks, in exact arithmetic with r = s / kappa:
//   i      x^T Q = 0 for x = (kappa, s, ..., 2 kappa - s, ..., s, kappa)
//   ii     det(Q°_1) = det(Q°_n) = (n-4) r + 4, Q° = Q / kappa
//   ii_mid det(Q°_(n+1)/2) = -(n-4) r^2 + 2 (n-6) r + 8
//   iii    |det(Q_k)| >= 3 kappa^n |r| for all k, when |r| <= 1/n
//   iv     phi(Q) <= (4 n^2 + 1) / (3 |s|)
//   v      non-redundant iff 0 < s < 2 kappa
//   vi     pi_min >= s / (5 kappa), when 0 < s <= kappa / n
VerifyReport VerifyQ(const std::vector<int>& n_values, const Rational& kappa,
                     const std::vector<Rational>& s_values);

// ---------------------------------------------------------------------------
// Random skew rank statistics

struct RankFrequencyReport {
  int n = 0;
  int q = 0;
  int trials = 0;
  std::map<int, int> rank_counts;
  double full_rank_frequency = 0.0;  // frequency of rank n-1
  double lower_bound = 0.0;          // 1 - (n-1) / (2 q^3)
  double sigma = 0.0;                // binomial sd at the lower bound
  bool all_even = true;
  bool passed() const {
    return all_even && full_rank_frequency >= lower_bound - 3.0 * sigma;
  }
  std::string ToJson() const;
};

// Draw k uses RandomSkew(n, q, DeriveStreamSeed(seed, kTrialSeed, k)); ranks
// are exact. Needs odd n and trials >= 100 (kInvalidArgument).
RankFrequencyReport RankFrequency(int n, int q, int trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Reference lines

// KL divergence of N(mu1, s1^2) from N(mu2, s2^2). Throws kNonpositiveVariance.
double KlNormal(double mu1, double mu2, double sigma1, double sigma2);

// (1 / (2 alpha^2)) log(5 / (12 delta)).
double KlLowerLine(double alpha, double delta);

}  // namespace nonred

#endif  // NONRED_EXPERIMENTS_H_

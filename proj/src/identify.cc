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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nonred/error.h"
#include "nonred/scalar.h"

namespace nonred {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void CheckDelta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw NonredError(ErrorCode::kInvalidArgument, "delta must be in (0, 1)");
  }
}

// Ceiling that ignores floating-point fuzz: values within a relative 1e-12
// of an integer round to it, so the formula collapses to 1 when it should.
std::int64_t CeilToRounds(double x) {
  if (!std::isfinite(x) || x > 4.0e18) {
    throw NonredError(ErrorCode::kInvalidArgument,
                      "round count does not fit in 64 bits");
  }
  const double nearest = std::nearbyint(x);
  if (std::fabs(x - nearest) <= 1e-12 * std::max(1.0, std::fabs(x))) {
    return static_cast<std::int64_t>(nearest);
  }
  return static_cast<std::int64_t>(std::ceil(x));
}

class TraceRecorder {
 public:
  TraceRecorder(RunTrace& trace, const IdentifyOptions& options)
      : trace_(trace), options_(options) {}

  bool ShouldRecord(std::int64_t t) const {
    if (options_.record_every > 0) return t % options_.record_every == 0;
    return (t & (t - 1)) == 0;
  }

  void Record(const RoundRecord& record) {
    if (!trace_.records.empty() && trace_.records.back().t == record.t) {
      trace_.records.back() = record;
    } else {
      trace_.records.push_back(record);
    }
  }

  void Guard(std::int64_t t, GuardKind kind) {
    ++trace_.guard_counts[static_cast<int>(kind)];
    if (trace_.guard_events.size() < options_.max_guard_events) {
      trace_.guard_events.push_back({t, kind});
    }
  }

 private:
  RunTrace& trace_;
  const IdentifyOptions& options_;
};

// Running sums of the observations with a skew-symmetric mean matrix.
class RunningMeans {
 public:
  explicit RunningMeans(int n)
      : n_(n), sums_(SkewGame<double>::UpperSize(n), 0.0),
        full_(static_cast<std::size_t>(n) * n, 0.0) {}

  void Add(std::span<const double> observations) {
    for (std::size_t k = 0; k < sums_.size(); ++k) sums_[k] += observations[k];
  }

  // Fills the full matrix with Z / t and a_ji = -a_ij.
  const std::vector<double>& Full(std::int64_t t) {
    const double inv = 1.0 / static_cast<double>(t);
    std::size_t k = 0;
    for (int i = 0; i < n_; ++i) {
      full_[i * n_ + i] = 0.0;
      for (int j = i + 1; j < n_; ++j, ++k) {
        const double v = sums_[k] * inv;
        full_[i * n_ + j] = v;
        full_[j * n_ + i] = -v;
      }
    }
    return full_;
  }

  std::vector<double> Upper(std::int64_t t) const {
    std::vector<double> out(sums_.size());
    for (std::size_t k = 0; k < sums_.size(); ++k) {
      out[k] = sums_[k] / static_cast<double>(t);
    }
    return out;
  }

 private:
  int n_;
  std::vector<double> sums_;
  std::vector<double> full_;
};

bool AllVerticesBelow(const ColumnReplacementWorkspace& ws, int n,
                      double epsilon, double bound) {
  for (int j = 0; j < n; ++j) {
    if (!(ws.MinVertexCoordinate(j, epsilon) < bound)) return false;
  }
  return true;
}

bool AllVerticesPositive(const ColumnReplacementWorkspace& ws, int n,
                         double epsilon) {
  for (int j = 0; j < n; ++j) {
    if (!(ws.MinVertexCoordinate(j, epsilon) > 0.0)) return false;
  }
  return true;
}

}  // namespace

std::int64_t HoeffdingRounds(double epsilon, double delta, int n) {
  if (!(epsilon > 0.0)) {
    throw NonredError(ErrorCode::kInvalidArgument, "epsilon must be positive");
  }
  CheckDelta(delta);
  const double log_term = std::log(2.0 * n * n / delta);
  return CeilToRounds(2.0 / (epsilon * epsilon) * log_term);
}

std::int64_t Algorithm1RoundCap(double alpha, double delta, double big_u, int n) {
  CheckDelta(delta);
  const double log_term = std::log(2.0 * n * n / delta);
  return CeilToRounds(2.0 * big_u * big_u / (alpha * alpha) * log_term) + 1;
}

const char* VerdictName(Verdict verdict) {
  return verdict == Verdict::kNonRedundant ? "non_redundant" : "alpha_redundant";
}

const char* BranchName(Branch branch) {
  switch (branch) {
    case Branch::kA:
      return "a";
    case Branch::kB:
      return "b";
    case Branch::kC:
      return "c";
    case Branch::kD:
      return "d";
    case Branch::kSameSign:
      return "same_sign";
    case Branch::kMixedSign:
      return "mixed_sign";
  }
  return "unknown";
}

const char* GuardKindName(GuardKind kind) {
  switch (kind) {
    case GuardKind::kColumnRetry:
      return "column_retry";
    case GuardKind::kAllSingular:
      return "all_singular";
    case GuardKind::kPartialSingular:
      return "partial_singular";
    case GuardKind::kPhiDegenerate:
      return "phi_degenerate";
    case GuardKind::kFinalUnavailable:
      return "final_unavailable";
    case GuardKind::kDeltaZero:
      return "delta_zero";
    case GuardKind::kRoundCap:
      return "round_cap";
  }
  return "unknown";
}

ColumnReplacementWorkspace::ColumnReplacementWorkspace(int n)
    : n_(n),
      work_(static_cast<std::size_t>(n) * (n + 2)),
      pi_(n),
      rows_(static_cast<std::size_t>(n) * n),
      state_(n, ColumnState::kPending) {}

// Solves A_j^T y = [1 | e_j] by Gaussian elimination with partial pivoting.
// The first column of the solution is r_j^T; the second is pi.
bool ColumnReplacementWorkspace::SolveColumn(int j) {
  const int n = n_;
  const int w = n + 2;
  const double* a = a_->data();
  double* m = work_.data();
  double max_abs = 1.0;  // the ones row
  for (int r = 0; r < n; ++r) {
    double* row = m + r * w;
    if (r == j) {
      for (int c = 0; c < n; ++c) row[c] = 1.0;
    } else {
      for (int c = 0; c < n; ++c) {
        row[c] = a[c * n + r];
        max_abs = std::max(max_abs, std::fabs(row[c]));
      }
    }
    row[n] = 1.0;
    row[n + 1] = r == j ? 1.0 : 0.0;
  }
  const double tol = kFloatPivotTolerance * max_abs;
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::fabs(m[k * w + k]);
    for (int r = k + 1; r < n; ++r) {
      const double v = std::fabs(m[r * w + k]);
      if (v > best) {
        best = v;
        p = r;
      }
    }
    if (!(best > tol)) {
      state_[j] = ColumnState::kSingular;
      return false;
    }
    if (p != k) {
      for (int c = k; c < w; ++c) std::swap(m[p * w + c], m[k * w + c]);
    }
    const double inv = 1.0 / m[k * w + k];
    for (int r = k + 1; r < n; ++r) {
      const double f = m[r * w + k] * inv;
      if (f == 0.0) continue;
      for (int c = k + 1; c < w; ++c) m[r * w + c] -= f * m[k * w + c];
    }
  }
  double* out = &rows_[static_cast<std::size_t>(j) * n];
  for (int r = n - 1; r >= 0; --r) {
    double s1 = m[r * w + n];
    double s2 = m[r * w + n + 1];
    for (int c = r + 1; c < n; ++c) {
      s1 -= m[r * w + c] * out[c];
      s2 -= m[r * w + c] * m[c * w + n + 1];
    }
    const double inv = 1.0 / m[r * w + r];
    out[r] = s1 * inv;
    // Back substitution overwrites the second right-hand side in place.
    m[r * w + n + 1] = s2 * inv;
  }
  if (pi_column_ < 0) {
    for (int r = 0; r < n; ++r) pi_[r] = m[r * w + n + 1];
    pi_column_ = j;
  }
  state_[j] = ColumnState::kOk;
  return true;
}

bool ColumnReplacementWorkspace::Begin(const std::vector<double>& a) {
  a_ = &a;
  pi_column_ = -1;
  std::fill(state_.begin(), state_.end(), ColumnState::kPending);
  for (int j = 0; j < n_; ++j) {
    if (SolveColumn(j)) return true;
  }
  return false;
}

bool ColumnReplacementWorkspace::Ensure(int j) {
  if (state_[j] == ColumnState::kPending) return SolveColumn(j);
  return state_[j] == ColumnState::kOk;
}

ColumnReplacementWorkspace::Status ColumnReplacementWorkspace::Finish() {
  if (pi_column_ < 0) return Status::kAllSingular;
  bool all_ok = true;
  for (int j = 0; j < n_; ++j) all_ok = Ensure(j) && all_ok;
  return all_ok ? Status::kOk : Status::kPartialSingular;
}

ColumnReplacementWorkspace::Status ColumnReplacementWorkspace::Compute(
    const std::vector<double>& a) {
  if (!Begin(a)) return Status::kAllSingular;
  return Finish();
}

double ColumnReplacementWorkspace::pi_min() const {
  return *std::min_element(pi_.begin(), pi_.end());
}

double ColumnReplacementWorkspace::ColumnDeviation(int j) const {
  const double* r = &rows_[static_cast<std::size_t>(j) * n_];
  double d = 0.0;
  for (int i = 0; i < n_; ++i) d = std::max(d, std::fabs(r[i] - pi_[i]));
  return d;
}

double ColumnReplacementWorkspace::phi() const {
  double phi = 0.0;
  for (int j = 0; j < n_; ++j) phi = std::max(phi, ColumnDeviation(j));
  return phi;
}

double ColumnReplacementWorkspace::SolvedPhi() const {
  double phi = 0.0;
  for (int j = 0; j < n_; ++j) {
    if (state_[j] == ColumnState::kOk) phi = std::max(phi, ColumnDeviation(j));
  }
  return phi;
}

int ColumnReplacementWorkspace::ArgmaxColumn() const {
  int best = pi_column_;
  double phi = -1.0;
  for (int j = 0; j < n_; ++j) {
    if (state_[j] != ColumnState::kOk) continue;
    const double d = ColumnDeviation(j);
    if (d > phi) {
      phi = d;
      best = j;
    }
  }
  return best;
}

double ColumnReplacementWorkspace::MinVertexCoordinate(int j,
                                                       double epsilon) const {
  const double* r = &rows_[static_cast<std::size_t>(j) * n_];
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_; ++i) {
    lo = std::min(lo, pi_[i] - epsilon * (r[i] - pi_[i]));
  }
  return lo;
}

IdentifyResult Identify(DuelEnv& env, double alpha, double delta, double big_u,
                        const IdentifyOptions& options) {
  const int n = env.n();
  if (n < 5 || n % 2 == 0) {
    throw NonredError(ErrorCode::kBadDimension,
                      "the general algorithm needs odd n >= 5, got " + std::to_string(n));
  }
  if (!(alpha > 0.0 && alpha * n <= 1.0)) {
    throw NonredError(ErrorCode::kInvalidArgument, "alpha must be in (0, 1/n]");
  }
  CheckDelta(delta);
  if (!(big_u >= 1.0)) {
    throw NonredError(ErrorCode::kInvalidArgument, "U must be at least 1");
  }

  IdentifyResult result;
  RunTrace& trace = result.trace;
  TraceRecorder recorder(trace, options);
  const double log_term = std::log(2.0 * n * n / delta);
  trace.round_cap = Algorithm1RoundCap(alpha, delta, big_u, n);

  RunningMeans means(n);
  ColumnReplacementWorkspace ws(n);
  const std::int64_t cap = trace.round_cap;
  bool last_ok = false;
  bool decided = false;

  int hot_column = 0;  // column that attained phi most recently

  for (std::int64_t t = 1; t <= cap && !decided; ++t) {
    means.Add(env.SampleRound());
    const bool record_round = t == cap || recorder.ShouldRecord(t);
    const double td = static_cast<double>(t);
    RoundRecord record{t, kNaN, kNaN, false, false, false, false};
    last_ok = false;

    if (!ws.Begin(means.Full(t))) {
      recorder.Guard(t, GuardKind::kAllSingular);
      record.guarded = true;
    } else {
      if (ws.pi_column() != 0) recorder.Guard(t, GuardKind::kColumnRetry);
      const double pi_min = ws.pi_min();
      record.pi_min = pi_min;
      // phi is at least the deviation over the columns solved so far. When
      // neither time condition can hold even at that bound, the remaining
      // columns cannot change the outcome of this round.
      bool need_full = record_round || !std::isfinite(pi_min);
      if (!need_full) {
        const bool hot_ok = ws.Ensure(hot_column);
        const double lower = ws.SolvedPhi();
        need_full = !hot_ok || !std::isfinite(lower) || !(lower > 0.0) ||
                    (pi_min > 0.0 && td > 2.0 * lower * lower / (pi_min * pi_min) * log_term) ||
                    td > 2.0 * lower * lower / (alpha * alpha) * log_term;
      }
      if (need_full && ws.Finish() == ColumnReplacementWorkspace::Status::kPartialSingular) {
        recorder.Guard(t, GuardKind::kPartialSingular);
        record.guarded = true;
      } else if (need_full) {
        const double phi = ws.phi();
        hot_column = ws.ArgmaxColumn();
        record.phi = phi;
        if (!(phi > 0.0) || !std::isfinite(phi) || !std::isfinite(pi_min)) {
          recorder.Guard(t, GuardKind::kPhiDegenerate);
          record.guarded = true;
        } else {
          last_ok = true;
          record.time_a = td > 2.0 * phi * phi / (pi_min * pi_min) * log_term;
          if (record.time_a && pi_min > 0.0) {
            result.conclusion = {Verdict::kNonRedundant, Branch::kA};
            record.fired = decided = true;
          } else {
            record.time_b = td > 2.0 * phi * phi / (alpha * alpha) * log_term;
            if (record.time_b && AllVerticesBelow(ws, n, alpha / phi, alpha)) {
              result.conclusion = {Verdict::kAlphaRedundant, Branch::kB};
              record.fired = decided = true;
            }
          }
        }
      }
    }
    trace.rounds = t;
    if (decided || record_round) recorder.Record(record);
  }

  if (!decided) {
    if (last_ok) {
      result.conclusion =
          AllVerticesPositive(ws, n, alpha / big_u)
              ? Conclusion{Verdict::kNonRedundant, Branch::kC}
              : Conclusion{Verdict::kAlphaRedundant, Branch::kD};
    } else {
      recorder.Guard(trace.rounds, GuardKind::kFinalUnavailable);
      result.conclusion = {Verdict::kAlphaRedundant, Branch::kD};
    }
  }

  trace.final_upper = means.Upper(trace.rounds);
  if (last_ok) {
    trace.final_phi = ws.phi();
    trace.final_pi_min = ws.pi_min();
  } else {
    trace.final_phi = trace.final_pi_min = kNaN;
  }
  const double floor2 = std::max(alpha * alpha, std::isfinite(trace.final_pi_min)
                                                    ? trace.final_pi_min *
                                                          trace.final_pi_min
                                                    : 0.0);
  trace.complexity_scale = big_u * big_u / floor2 * std::log(n / delta);
  return result;
}

IdentifyResult Identify3x3(DuelEnv& env, double delta,
                           const IdentifyOptions& options) {
  if (env.n() != 3) {
    throw NonredError(ErrorCode::kBadDimension,
                      "the 3x3 procedure needs n = 3, got " + std::to_string(env.n()));
  }
  CheckDelta(delta);

  IdentifyResult result;
  RunTrace& trace = result.trace;
  TraceRecorder recorder(trace, options);
  trace.round_cap = options.max_rounds_3x3;
  const double log_term = std::log(2.0 / delta);

  // Upper-triangle order is (a_12, a_13, a_23); a_31 = -a_13.
  double z12 = 0.0, z13 = 0.0, z23 = 0.0;
  double a12 = 0.0, a23 = 0.0, a31 = 0.0;
  bool decided = false;
  for (std::int64_t t = 1; t <= trace.round_cap && !decided; ++t) {
    const std::span<const double> x = env.SampleRound();
    z12 += x[0];
    z13 += x[1];
    z23 += x[2];
    const double td = static_cast<double>(t);
    a12 = z12 / td;
    a23 = z23 / td;
    a31 = -z13 / td;
    const double gap =
        std::min({std::fabs(a12), std::fabs(a23), std::fabs(a31)});
    RoundRecord record{t, kNaN, gap, false, false, false, false};
    if (gap == 0.0) {
      recorder.Guard(t, GuardKind::kDeltaZero);
      record.guarded = true;
    } else if (td > 18.0 / (gap * gap) * log_term) {
      record.time_a = true;
      record.fired = decided = true;
    }
    trace.rounds = t;
    if (decided || t == trace.round_cap || recorder.ShouldRecord(t)) {
      recorder.Record(record);
    }
  }
  if (!decided) recorder.Guard(trace.rounds, GuardKind::kRoundCap);

  const bool same_sign =
      (a12 > 0.0 && a23 > 0.0 && a31 > 0.0) || (a12 < 0.0 && a23 < 0.0 && a31 < 0.0);
  result.conclusion = same_sign
                          ? Conclusion{Verdict::kNonRedundant, Branch::kSameSign}
                          : Conclusion{Verdict::kAlphaRedundant, Branch::kMixedSign};
  trace.final_upper = {a12, -a31, a23};
  trace.final_phi = kNaN;
  trace.final_pi_min = kNaN;
  return result;
}

Algorithm ParseAlgorithm(std::string_view name) {
  if (name == "auto") return Algorithm::kAuto;
  if (name == "alg1") return Algorithm::kAlg1;
  if (name == "alg2") return Algorithm::kAlg2;
  throw NonredError(ErrorCode::kParseError,
                    "unknown algorithm '" + std::string(name) + "'");
}

IdentifyResult RunIdentification(DuelEnv& env, Algorithm algorithm,
                                 double alpha, double delta, double big_u,
                                 const IdentifyOptions& options) {
  const bool use_3x3 = algorithm == Algorithm::kAlg2 ||
                       (algorithm == Algorithm::kAuto && env.n() == 3);
  if (use_3x3) return Identify3x3(env, delta, options);
  return Identify(env, alpha, delta, big_u, options);
}

}  // namespace nonred

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

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <initializer_list>
#include <sstream>
#include <string_view>
#include <thread>

#include "json.hpp"
#include "nonred/error.h"
#include "nonred/linalg.h"
#include "nonred/matrix_io.h"
#include "nonred/oracle.h"
#include "nonred/polytope.h"
#include "nonred/rng.h"

namespace nonred {

namespace {

using json = nlohmann::json;

// Shortest round-trip decimal spelling.
std::string FormatDouble(double x) {
  if (std::isnan(x)) return "nan";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), x);
  return std::string(buffer, result.ptr);
}

Rational AbsRational(const Rational& x) { return x < 0 ? Rational(-x) : x; }

}  // namespace

// ---------------------------------------------------------------------------
// Instances

ExactGame BuildInstance(const InstanceSpec& spec) {
  const std::string& f = spec.family;
  if (f == "q") return QInstance(spec.n, spec.kappa, spec.s);
  if (f == "jan_ken") return JanKen();
  if (f == "ext_jan_ken4") return ExtendedJanKen4();
  if (f == "efron") return EfronDiceGame();
  if (f == "three") return ThreeByThree(spec.a, spec.b, spec.c);
  if (f == "random") return RandomSkew(spec.n, spec.q, spec.seed);
  if (f == "file") return ReadMatrixFile(spec.path).game;
  throw NonredError(ErrorCode::kInvalidArgument, "unknown instance family '" + f + "'");
}

std::string DescribeInstance(const InstanceSpec& spec) {
  const std::string& f = spec.family;
  if (f == "q") {
    return "q(" + std::to_string(spec.n) + "," + RationalToString(spec.kappa) +
           "," + RationalToString(spec.s) + ")";
  }
  if (f == "three") {
    return "three(" + RationalToString(spec.a) + "," + RationalToString(spec.b) +
           "," + RationalToString(spec.c) + ")";
  }
  if (f == "random") {
    return "random(" + std::to_string(spec.n) + "," + std::to_string(spec.q) +
           "," + std::to_string(spec.seed) + ")";
  }
  if (f == "file") return "file(" + spec.path + ")";
  return f;
}

GroundTruth ComputeGroundTruth(const ExactGame& game) {
  GroundTruth truth;
  truth.non_redundant = IsNonRedundant(game);
  try {
    const Strategy<Rational> pi = KernelNash(game);
    truth.condition1 = true;
    truth.pi_min = pi.MinCoordinate();
  } catch (const NonredError& e) {
    if (e.code() != ErrorCode::kConditionViolated &&
        e.code() != ErrorCode::kAllAjSingular) {
      throw;
    }
  }
  if (truth.condition1) {
    try {
      truth.phi = Phi(game);
      truth.phi_defined = true;
    } catch (const NonredError& e) {
      if (e.code() != ErrorCode::kSingular) throw;
    }
  }
  truth.best_equilibrium_min = BestEquilibriumMinCoordinate(game);
  return truth;
}

// ---------------------------------------------------------------------------
// Monte-Carlo trials

bool IsCorrectVerdict(Verdict verdict, bool uses_alg1, bool non_redundant,
                      bool alpha_redundant) {
  if (verdict == Verdict::kNonRedundant) return non_redundant;
  return uses_alg1 ? alpha_redundant : !non_redundant;
}

CellSummary RunTrials(const GridCell& cell, int threads) {
  if (cell.trials < 1) {
    throw NonredError(ErrorCode::kInvalidArgument, "trials must be at least 1");
  }
  const ExactGame game = BuildInstance(cell.instance);
  CellSummary summary;
  summary.instance = DescribeInstance(cell.instance);
  summary.n = game.n();
  summary.cell = cell;
  summary.truth = ComputeGroundTruth(game);
  summary.uses_alg1 = cell.algorithm == Algorithm::kAlg1 ||
                      (cell.algorithm == Algorithm::kAuto && game.n() != 3);

  if (cell.u_phi_multiple) {
    if (!summary.truth.phi_defined) {
      throw NonredError(ErrorCode::kInvalidArgument,
                        "U given as a multiple of phi, but phi is undefined for " +
                            summary.instance);
    }
    summary.big_u = *cell.u_phi_multiple * ScalarTraits<Rational>::ToDouble(summary.truth.phi);
  } else {
    summary.big_u = cell.big_u;
  }
  if (summary.uses_alg1) {
    summary.alpha_redundant = IsAlphaRedundant(game, ParseRational(FormatDouble(cell.alpha)));
    summary.t_bound = Algorithm1RoundCap(cell.alpha, cell.delta, summary.big_u, game.n());
  }
  summary.kl_lower_line = KlLowerLine(cell.alpha, cell.delta);

  const FloatGame hidden = ToFloat(game);
  std::vector<TrialRecord> records(cell.trials);
  std::vector<std::exception_ptr> errors(cell.trials);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int k = next++; k < cell.trials; k = next++) {
      try {
        const auto start = std::chrono::steady_clock::now();
        TrialRecord& r = records[k];
        r.instance = summary.instance;
        r.seed = DeriveStreamSeed(cell.seed, StreamPurpose::kTrialSeed, k);
        r.alpha = cell.alpha;
        r.delta = cell.delta;
        r.big_u = summary.big_u;
        r.noise = cell.noise;
        DuelEnv env(hidden, cell.noise, r.seed);
        IdentifyOptions options;
        options.max_guard_events = 0;
        const IdentifyResult result = RunIdentification(
            env, cell.algorithm, cell.alpha, cell.delta, summary.big_u, options);
        r.conclusion = result.conclusion;
        r.rounds = result.trace.rounds;
        r.round_cap = result.trace.round_cap;
        for (std::int64_t c : result.trace.guard_counts) r.guard_events += c;
        r.correct = IsCorrectVerdict(r.conclusion.verdict, summary.uses_alg1,
                                     summary.truth.non_redundant,
                                     summary.alpha_redundant);
        r.wall_seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  int workers = threads > 0 ? threads
                            : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, cell.trials);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // Deterministic fold in trial order.
  std::vector<std::int64_t> rounds;
  rounds.reserve(records.size());
  double total = 0.0;
  for (const TrialRecord& r : records) {
    summary.correct += r.correct ? 1 : 0;
    total += static_cast<double>(r.rounds);
    rounds.push_back(r.rounds);
    ++summary.branch_histogram[BranchName(r.conclusion.branch)];
  }
  summary.trials = cell.trials;
  summary.correct_rate = static_cast<double>(summary.correct) / cell.trials;
  summary.mean_rounds = total / cell.trials;
  std::sort(rounds.begin(), rounds.end());
  auto nearest_rank = [&](double p) {
    const auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(rounds.size())));
    return rounds[std::max<std::size_t>(rank, 1) - 1];
  };
  summary.p50_rounds = nearest_rank(0.5);
  summary.p95_rounds = nearest_rank(0.95);
  summary.max_rounds = rounds.back();
  summary.records = std::move(records);
  return summary;
}

// ---------------------------------------------------------------------------
// Sweeps

namespace {

Rational RationalFromJson(const json& v, const char* what) {
  try {
    if (v.is_string()) return ParseRational(v.get<std::string>());
    if (v.is_number()) return ParseRational(v.dump());
  } catch (const NonredError& e) {
    throw NonredError(ErrorCode::kParseError, std::string(what) + ": " + e.what());
  }
  throw NonredError(ErrorCode::kParseError, std::string(what) + " must be a number or string");
}

double DoubleFromJson(const json& v, const char* what) {
  if (v.is_number()) return v.get<double>();
  return ScalarTraits<Rational>::ToDouble(RationalFromJson(v, what));
}

// Wraps a scalar into a one-element list.
json AsList(const json& v) { return v.is_array() ? v : json::array({v}); }

void RejectUnknownKeys(const json& object, std::initializer_list<std::string_view> known,
                       std::string_view where) {
  for (const auto& [key, value] : object.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw NonredError(ErrorCode::kParseError,
                        "unknown " + std::string(where) + " key \"" + key + "\"");
    }
  }
}

struct SEntry {
  int alpha_sign = 0;  // +1 / -1: s follows alpha
  Rational value = 0;
};

}  // namespace

SweepGrid ParseSweepGrid(std::string_view json_text,
                         std::optional<std::uint64_t> seed_override) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::exception& e) {
    throw NonredError(ErrorCode::kParseError, e.what());
  }
  if (!doc.is_object()) {
    throw NonredError(ErrorCode::kParseError, "grid must be a JSON object");
  }
  try {
    RejectUnknownKeys(doc, {"instance", "alpha", "delta", "U", "noise", "algorithm", "trials",
                            "seed", "threads"},
                      "grid");
    const json inst = doc.value("instance", json::object());
    if (!inst.is_object()) {
      throw NonredError(ErrorCode::kParseError, "\"instance\" must be an object");
    }
    RejectUnknownKeys(inst, {"family", "n", "kappa", "s", "abc", "q", "seed", "path"},
                      "instance");
    InstanceSpec base;
    base.family = inst.value("family", std::string("q"));
    base.q = inst.value("q", 16);
    base.seed = inst.value("seed", std::uint64_t{1});
    base.path = inst.value("path", std::string());
    if (inst.contains("abc")) {
      const json& abc = inst["abc"];
      if (!abc.is_array() || abc.size() != 3) {
        throw NonredError(ErrorCode::kParseError, "\"abc\" must hold three entries");
      }
      base.a = RationalFromJson(abc[0], "a");
      base.b = RationalFromJson(abc[1], "b");
      base.c = RationalFromJson(abc[2], "c");
    }

    std::vector<int> n_values;
    for (const json& v : AsList(inst.value("n", json(5)))) n_values.push_back(v.get<int>());
    std::vector<Rational> kappas;
    for (const json& v : AsList(inst.value("kappa", json("3/10")))) {
      kappas.push_back(RationalFromJson(v, "kappa"));
    }
    std::vector<SEntry> s_entries;
    for (const json& v : AsList(inst.value("s", json("1/5")))) {
      if (v.is_string() && v.get<std::string>() == "alpha") {
        s_entries.push_back({+1, 0});
      } else if (v.is_string() && v.get<std::string>() == "-alpha") {
        s_entries.push_back({-1, 0});
      } else {
        s_entries.push_back({0, RationalFromJson(v, "s")});
      }
    }
    if (base.family != "q") {
      kappas.resize(1);
      s_entries.resize(1);
      if (base.family != "random") n_values.resize(1);
    }

    std::vector<double> alphas, deltas;
    for (const json& v : AsList(doc.value("alpha", json(0.05)))) {
      alphas.push_back(DoubleFromJson(v, "alpha"));
    }
    for (const json& v : AsList(doc.value("delta", json(0.05)))) {
      deltas.push_back(DoubleFromJson(v, "delta"));
    }
    std::vector<NoiseModel> noises;
    for (const json& v : AsList(doc.value("noise", json("gaussian_unit")))) {
      noises.push_back(ParseNoiseModel(v.get<std::string>()));
    }

    // U: number, "<k>phi" or "<k>n2".
    const json u = doc.value("U", json("10n2"));
    std::optional<double> u_phi;
    double u_abs = 0.0;
    double u_n2 = 0.0;
    if (u.is_number()) {
      u_abs = u.get<double>();
    } else {
      const std::string text = u.get<std::string>();
      auto multiple = [&](std::size_t suffix_len) {
        const std::string head = text.substr(0, text.size() - suffix_len);
        return head.empty() ? 1.0 : ScalarTraits<Rational>::ToDouble(ParseRational(head));
      };
      if (text.size() >= 3 && text.ends_with("phi")) {
        u_phi = multiple(3);
      } else if (text.size() >= 2 && text.ends_with("n2")) {
        u_n2 = multiple(2);
      } else {
        u_abs = ScalarTraits<Rational>::ToDouble(ParseRational(text));
      }
    }

    const Algorithm algorithm = ParseAlgorithm(doc.value("algorithm", std::string("auto")));
    const int trials = doc.value("trials", 10);
    const std::uint64_t seed = seed_override.value_or(doc.value("seed", std::uint64_t{1}));

    SweepGrid grid;
    grid.threads = doc.value("threads", 0);
    std::uint64_t index = 0;
    for (int n : n_values) {
      for (const Rational& kappa : kappas) {
        for (const SEntry& s : s_entries) {
          for (double alpha : alphas) {
            for (double delta : deltas) {
              for (NoiseModel noise : noises) {
                GridCell cell;
                cell.instance = base;
                cell.instance.n = n;
                cell.instance.kappa = kappa;
                cell.instance.s = s.alpha_sign == 0
                                      ? s.value
                                      : Rational(s.alpha_sign) * ParseRational(FormatDouble(alpha));
                cell.alpha = alpha;
                cell.delta = delta;
                cell.noise = noise;
                cell.algorithm = algorithm;
                cell.trials = trials;
                cell.u_phi_multiple = u_phi;
                cell.big_u = u_n2 > 0.0 ? u_n2 * n * n : u_abs;
                cell.seed = DeriveStreamSeed(seed, StreamPurpose::kCellSeed, index++);
                grid.cells.push_back(std::move(cell));
              }
            }
          }
        }
      }
    }
    return grid;
  } catch (const json::exception& e) {
    throw NonredError(ErrorCode::kParseError, e.what());
  }
}

std::vector<CellSummary> Sweep(const SweepGrid& grid) {
  std::vector<CellSummary> out;
  out.reserve(grid.cells.size());
  for (const GridCell& cell : grid.cells) out.push_back(RunTrials(cell, grid.threads));
  return out;
}

std::string CsvRow(const CellSummary& s) {
  const bool q = s.cell.instance.family == "q";
  std::ostringstream row;
  row << '"' << s.instance << '"' << ',' << s.n << ','
      << (q ? RationalToString(s.cell.instance.kappa) : "") << ','
      << (q ? RationalToString(s.cell.instance.s) : "") << ','
      << FormatDouble(s.cell.alpha) << ',' << FormatDouble(s.cell.delta) << ','
      << FormatDouble(s.big_u) << ',' << NoiseModelName(s.cell.noise) << ','
      << s.trials << ',' << FormatDouble(s.correct_rate) << ','
      << FormatDouble(s.mean_rounds) << ',' << s.p50_rounds << ','
      << s.p95_rounds << ','
      << (s.truth.phi_defined ? FormatDouble(ScalarTraits<Rational>::ToDouble(s.truth.phi)) : "")
      << ','
      << (s.truth.condition1 ? FormatDouble(ScalarTraits<Rational>::ToDouble(s.truth.pi_min)) : "")
      << ',' << (s.uses_alg1 ? std::to_string(s.t_bound) : "") << ','
      << FormatDouble(s.kl_lower_line);
  return row.str();
}

std::string SweepCsv(const std::vector<CellSummary>& summaries) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const CellSummary& s : summaries) {
    out += CsvRow(s);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact verification of the Q family

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const VerifyCheck& c) { return !c.applicable || c.passed; });
}

std::string VerifyReport::ToJson() const {
  json doc;
  doc["kappa"] = RationalToString(kappa);
  doc["all_passed"] = all_passed();
  json list = json::array();
  for (const VerifyCheck& c : checks) {
    list.push_back({{"n", c.n},
                    {"s", RationalToString(c.s)},
                    {"check", c.id},
                    {"applicable", c.applicable},
                    {"passed", c.passed},
                    {"detail", c.detail}});
  }
  doc["checks"] = std::move(list);
  return doc.dump(2);
}

VerifyReport VerifyQ(const std::vector<int>& n_values, const Rational& kappa,
                     const std::vector<Rational>& s_values) {
  VerifyReport report;
  report.kappa = kappa;
  for (int n : n_values) {
    for (const Rational& s : s_values) {
      const ExactGame game = QInstance(n, kappa, s);
      const Matrix<Rational> q = game.ToMatrix();
      const Rational r = s / kappa;
      const Rational abs_s = AbsRational(s);
      auto add = [&](std::string id, bool applicable, bool passed, std::string detail) {
        report.checks.push_back({n, s, std::move(id), applicable, passed, std::move(detail)});
      };

      // (i)
      std::vector<Rational> x(n, s);
      x[0] = x[n - 1] = kappa;
      x[(n - 1) / 2] = 2 * kappa - s;
      const std::vector<Rational> xq = LeftMultiply<Rational>(x, q);
      std::string witness;
      for (int k = 0; k < n && witness.empty(); ++k) {
        if (xq[k] != 0) {
          witness = "k=" + std::to_string(k + 1) + " (x^T Q)_k=" + RationalToString(xq[k]);
        }
      }
      add("i", true, witness.empty(), witness);

      // (ii) and the middle column.
      Matrix<Rational> scaled = q;
      for (std::size_t i = 0; i < scaled.rows(); ++i) {
        for (std::size_t j = 0; j < scaled.cols(); ++j) scaled(i, j) /= kappa;
      }
      const Rational d1 = Determinant(ReplaceColumnWithOnes(scaled, 0));
      const Rational dn = Determinant(ReplaceColumnWithOnes(scaled, n - 1));
      const Rational expect_end = (n - 4) * r + 4;
      add("ii", true, d1 == expect_end && dn == expect_end,
          d1 == expect_end && dn == expect_end
              ? ""
              : "det1=" + RationalToString(d1) + " detn=" + RationalToString(dn) +
                    " expected=" + RationalToString(expect_end));
      const Rational dm = Determinant(ReplaceColumnWithOnes(scaled, (n - 1) / 2));
      const Rational expect_mid = -(n - 4) * r * r + 2 * (n - 6) * r + 8;
      add("ii_mid", true, dm == expect_mid,
          dm == expect_mid ? ""
                           : "det=" + RationalToString(dm) +
                                 " expected=" + RationalToString(expect_mid));

      // (iii)
      const bool iii_applies = AbsRational(r) * n <= 1 && s != 0;
      if (iii_applies) {
        Rational kappa_n = 1;
        for (int k = 0; k < n; ++k) kappa_n *= kappa;
        const Rational bound = 3 * kappa_n * AbsRational(r);
        std::string w;
        for (int k = 0; k < n && w.empty(); ++k) {
          const Rational d = AbsRational(Determinant(ReplaceColumnWithOnes(q, k)));
          if (d < bound) {
            w = "k=" + std::to_string(k + 1) + " |det|=" + RationalToString(d) +
                " bound=" + RationalToString(bound);
          }
        }
        add("iii", true, w.empty(), w);
      } else {
        add("iii", false, true, "needs 0 < |s|/kappa <= 1/n");
      }

      // (iv), (vi) need the exact phi and kernel solution.
      GroundTruth truth = ComputeGroundTruth(game);
      if (truth.phi_defined && s != 0) {
        const Rational bound = Rational(4 * n * n + 1) / (3 * abs_s);
        add("iv", true, truth.phi <= bound,
            truth.phi <= bound ? ""
                               : "phi=" + RationalToString(truth.phi) +
                                     " bound=" + RationalToString(bound));
      } else {
        add("iv", false, true, "phi undefined or s = 0");
      }

      const bool expect_nr = s > 0 && s < 2 * kappa;
      add("v", true, truth.non_redundant == expect_nr,
          truth.non_redundant == expect_nr
              ? ""
              : std::string("oracle=") + (truth.non_redundant ? "non_redundant" : "redundant"));

      const bool vi_applies = s > 0 && s * n <= kappa;
      if (vi_applies && truth.condition1) {
        const Rational bound = s / (5 * kappa);
        add("vi", true, truth.pi_min >= bound,
            truth.pi_min >= bound ? ""
                                  : "pi_min=" + RationalToString(truth.pi_min) +
                                        " bound=" + RationalToString(bound));
      } else {
        add("vi", false, true, "needs 0 < s <= kappa/n");
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Random skew rank statistics

std::string RankFrequencyReport::ToJson() const {
  json doc;
  doc["n"] = n;
  doc["q"] = q;
  doc["trials"] = trials;
  json counts = json::object();
  for (const auto& [rank, count] : rank_counts) counts[std::to_string(rank)] = count;
  doc["rank_counts"] = std::move(counts);
  doc["full_rank_frequency"] = full_rank_frequency;
  doc["lower_bound"] = lower_bound;
  doc["sigma"] = sigma;
  doc["all_even"] = all_even;
  doc["passed"] = passed();
  return doc.dump(2);
}

RankFrequencyReport RankFrequency(int n, int q, int trials, std::uint64_t seed) {
  if (n < 1 || n % 2 == 0) {
    throw NonredError(ErrorCode::kInvalidArgument, "rank frequency needs odd n");
  }
  if (trials < 100 || q < 1) {
    throw NonredError(ErrorCode::kInvalidArgument, "needs trials >= 100 and q >= 1");
  }
  RankFrequencyReport report;
  report.n = n;
  report.q = q;
  report.trials = trials;
  for (int k = 0; k < trials; ++k) {
    const ExactGame g =
        RandomSkew(n, q, DeriveStreamSeed(seed, StreamPurpose::kTrialSeed, k));
    const int rank = Rank(g, 0.0).rank;
    ++report.rank_counts[rank];
    report.all_even = report.all_even && rank % 2 == 0;
  }
  const auto it = report.rank_counts.find(n - 1);
  const int full = it == report.rank_counts.end() ? 0 : it->second;
  report.full_rank_frequency = static_cast<double>(full) / trials;
  report.lower_bound = 1.0 - static_cast<double>(n - 1) / (2.0 * q * q * q);
  report.sigma = std::sqrt(std::max(0.0, report.lower_bound * (1.0 - report.lower_bound)) / trials);
  return report;
}

// ---------------------------------------------------------------------------
// Reference lines

double KlNormal(double mu1, double mu2, double sigma1, double sigma2) {
  if (!(sigma1 > 0.0) || !(sigma2 > 0.0)) {
    throw NonredError(ErrorCode::kNonpositiveVariance, "standard deviations must be positive");
  }
  const double v1 = sigma1 * sigma1;
  const double v2 = sigma2 * sigma2;
  const double d = mu2 - mu1;
  return 0.5 * (d * d / v2 + v1 / v2 - std::log(v1 / v2) - 1.0);
}

double KlLowerLine(double alpha, double delta) {
  return 1.0 / (2.0 * alpha * alpha) * std::log(5.0 / (12.0 * delta));
}

}  // namespace nonred

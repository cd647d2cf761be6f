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

// Command-line front end: gen, oracle, identify, sweep, verify, rankfreq.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nonred/bandit_env.h"
#include "nonred/error.h"
#include "nonred/experiments.h"
#include "nonred/game.h"
#include "nonred/identify.h"
#include "nonred/matrix_io.h"
#include "nonred/oracle.h"
#include "nonred/scalar.h"

namespace {

using json = nlohmann::json;
using nonred::Rational;

// NONRED_SEED, when set, replaces every base seed.
std::optional<std::uint64_t> SeedFromEnvironment() {
  const char* value = std::getenv("NONRED_SEED");
  if (value == nullptr || *value == '\0') return std::nullopt;
  try {
    return std::stoull(value, nullptr, 0);
  } catch (const std::exception&) {
    throw nonred::NonredError(nonred::ErrorCode::kParseError,
                              std::string("NONRED_SEED is not an integer: ") + value);
  }
}

std::uint64_t EffectiveSeed(std::uint64_t flag) {
  return SeedFromEnvironment().value_or(flag);
}

struct InstanceFlags {
  std::string matrix;
  std::string instance;
  int n = 5;
  std::string kappa = "3/10";
  std::string s = "1/5";
  std::string a = "3/10", b = "2/5", c = "1/2";
  int q = 16;
  std::uint64_t seed = 1;
};

void AddInstanceFlags(CLI::App* app, InstanceFlags& f, bool with_matrix) {
  if (with_matrix) app->add_option("--matrix", f.matrix, "matrix JSON file");
  app->add_option("--instance", f.instance,
                  "q | jan_ken | ext_jan_ken4 | efron | three | random");
  app->add_option("--n", f.n, "dimension (q, random)");
  app->add_option("--kappa", f.kappa, "q: kappa");
  app->add_option("--s", f.s, "q: s");
  app->add_option("--a", f.a, "three: a");
  app->add_option("--b", f.b, "three: b");
  app->add_option("--c", f.c, "three: c");
  app->add_option("--q", f.q, "random: denominator");
  app->add_option("--instance-seed", f.seed, "random: seed");
}

nonred::ExactGame LoadGame(const InstanceFlags& f, std::string* label) {
  if (!f.matrix.empty()) {
    *label = "file(" + f.matrix + ")";
    return nonred::ReadMatrixFile(f.matrix).game;
  }
  if (f.instance.empty()) {
    throw nonred::NonredError(nonred::ErrorCode::kInvalidArgument,
                              "pass --matrix or --instance");
  }
  nonred::InstanceSpec spec;
  spec.family = f.instance;
  spec.n = f.n;
  spec.kappa = nonred::ParseRational(f.kappa);
  spec.s = nonred::ParseRational(f.s);
  spec.a = nonred::ParseRational(f.a);
  spec.b = nonred::ParseRational(f.b);
  spec.c = nonred::ParseRational(f.c);
  spec.q = f.q;
  spec.seed = f.instance == "random" ? EffectiveSeed(f.seed) : f.seed;
  *label = nonred::DescribeInstance(spec);
  return nonred::BuildInstance(spec);
}

json RationalList(const std::vector<Rational>& v) {
  json out = json::array();
  for (const Rational& x : v) out.push_back(nonred::RationalToString(x));
  return out;
}

template <typename T>
std::vector<T> SplitList(const std::string& text, T (*parse)(const std::string&)) {
  std::vector<T> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(parse(item));
  }
  return out;
}

int ParseInt(const std::string& s) { return std::stoi(s); }
Rational ParseRationalItem(const std::string& s) { return nonred::ParseRational(s); }

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw nonred::NonredError(nonred::ErrorCode::kInvalidArgument,
                              "cannot write '" + path + "'");
  }
  out << text;
}

json TraceSummary(const nonred::RunTrace& trace) {
  json guards = json::object();
  for (int k = 0; k < nonred::kNumGuardKinds; ++k) {
    if (trace.guard_counts[k] > 0) {
      guards[nonred::GuardKindName(static_cast<nonred::GuardKind>(k))] = trace.guard_counts[k];
    }
  }
  json records = json::array();
  for (const nonred::RoundRecord& r : trace.records) {
    records.push_back({{"t", r.t},
                       {"phi", std::isnan(r.phi) ? json(nullptr) : json(r.phi)},
                       {"pi_min", std::isnan(r.pi_min) ? json(nullptr) : json(r.pi_min)},
                       {"time_a", r.time_a},
                       {"time_b", r.time_b},
                       {"fired", r.fired},
                       {"guarded", r.guarded}});
  }
  auto num = [](double x) { return std::isnan(x) ? json(nullptr) : json(x); };
  return {{"rounds", trace.rounds},
          {"round_cap", trace.round_cap},
          {"final_phi", num(trace.final_phi)},
          {"final_pi_min", num(trace.final_pi_min)},
          {"complexity_scale", trace.complexity_scale},
          {"guard_counts", guards},
          {"final_upper", trace.final_upper},
          {"records", records}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Identify non-redundant skew-symmetric games from noisy duels"};
  app.require_subcommand(1);

  // gen
  InstanceFlags gen_flags;
  std::string gen_out;
  bool gen_float = false;
  CLI::App* gen = app.add_subcommand("gen", "emit a matrix JSON");
  AddInstanceFlags(gen, gen_flags, false);
  gen->add_option("--out", gen_out, "output file (default stdout)");
  gen->add_flag("--float", gen_float, "write numbers instead of exact strings");

  // oracle
  InstanceFlags oracle_flags;
  CLI::App* oracle = app.add_subcommand("oracle", "exact verdict, Pfaffians, equilibrium");
  AddInstanceFlags(oracle, oracle_flags, true);

  // identify
  InstanceFlags id_flags;
  std::string id_noise = "gaussian_unit";
  std::string id_algo = "auto";
  std::uint64_t id_seed = 1;
  double id_alpha = 0.05, id_delta = 0.05;
  std::optional<double> id_u;
  std::int64_t id_record_every = 0;
  CLI::App* identify = app.add_subcommand("identify", "run identification on a simulated game");
  AddInstanceFlags(identify, id_flags, true);
  identify->add_option("--noise", id_noise, "gaussian_unit | sign_bernoulli | noiseless");
  identify->add_option("--seed", id_seed, "duel noise seed");
  identify->add_option("--alpha", id_alpha, "margin alpha in (0, 1/n]");
  identify->add_option("--delta", id_delta, "failure probability");
  identify->add_option("--bigU", id_u, "assumed upper bound on phi (default 10 n^2)");
  identify->add_option("--algo", id_algo, "auto | alg1 | alg2");
  identify->add_option("--record-every", id_record_every,
                       "trace stride (0 = powers of two)");

  // sweep
  std::string sweep_grid, sweep_out;
  std::optional<int> sweep_threads;
  CLI::App* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep to CSV");
  sweep->add_option("--grid", sweep_grid, "grid JSON file")->required();
  sweep->add_option("--out", sweep_out, "CSV file (default stdout)");
  sweep->add_option("--threads", sweep_threads, "worker threads (0 = all cores)");

  // verify
  std::string verify_family = "q", verify_n = "5,7,9", verify_kappa = "1/10",
              verify_s = "1/100,-1/100,1/1000,-1/1000";
  CLI::App* verify = app.add_subcommand("verify", "exact checks of the Q family");
  verify->add_option("--family", verify_family, "only q");
  verify->add_option("--n", verify_n, "comma-separated odd n");
  verify->add_option("--kappa", verify_kappa, "kappa");
  verify->add_option("--s", verify_s, "comma-separated s values");

  // rankfreq
  int rf_n = 5, rf_q = 16, rf_trials = 10000;
  std::uint64_t rf_seed = 1;
  CLI::App* rankfreq = app.add_subcommand("rankfreq", "rank statistics of random skew matrices");
  rankfreq->add_option("--n", rf_n, "odd dimension");
  rankfreq->add_option("--q", rf_q, "entries k/q with k in [-q, q]");
  rankfreq->add_option("--trials", rf_trials, "number of draws");
  rankfreq->add_option("--seed", rf_seed, "base seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      std::string label;
      const nonred::ExactGame game = LoadGame(gen_flags, &label);
      const std::string text = gen_float ? nonred::MatrixToJson(nonred::ToFloat(game), label)
                                         : nonred::MatrixToJson(game, label);
      WriteOutput(gen_out, text + "\n");
      return 0;
    }
    if (*oracle) {
      std::string label;
      const nonred::OracleReport r = nonred::RunOracle(LoadGame(oracle_flags, &label));
      json doc = {{"instance", label},
                  {"n", r.n},
                  {"verdict", r.non_redundant ? "non_redundant" : "redundant"},
                  {"boundary", r.boundary},
                  {"pfaffians", RationalList(r.pfaffians)},
                  {"best_equilibrium_min", nonred::RationalToString(r.best_equilibrium_min)}};
      if (r.non_redundant) {
        doc["equilibrium"] = RationalList(r.equilibrium);
        doc["pi_min"] = nonred::RationalToString(r.pi_min);
      } else {
        doc["equilibrium"] = nullptr;
        doc["pi_min"] = nullptr;
      }
      std::cout << doc.dump(2) << "\n";
      return 0;
    }
    if (*identify) {
      std::string label;
      const nonred::ExactGame game = LoadGame(id_flags, &label);
      const int n = game.n();
      const double big_u = id_u.value_or(10.0 * n * n);
      const std::uint64_t seed = EffectiveSeed(id_seed);
      nonred::DuelEnv env(game, nonred::ParseNoiseModel(id_noise), seed);
      nonred::IdentifyOptions options;
      options.record_every = id_record_every;
      const nonred::IdentifyResult result = nonred::RunIdentification(
          env, nonred::ParseAlgorithm(id_algo), id_alpha, id_delta, big_u, options);
      json doc = {{"instance", label},
                  {"n", n},
                  {"noise", id_noise},
                  {"seed", seed},
                  {"alpha", id_alpha},
                  {"delta", id_delta},
                  {"U", big_u},
                  {"verdict", nonred::VerdictName(result.conclusion.verdict)},
                  {"branch", nonred::BranchName(result.conclusion.branch)},
                  {"rounds_used", env.rounds_used()},
                  {"trace", TraceSummary(result.trace)}};
      std::cout << doc.dump(2) << "\n";
      return 0;
    }
    if (*sweep) {
      std::ifstream in(sweep_grid);
      if (!in) {
        throw nonred::NonredError(nonred::ErrorCode::kInvalidArgument,
                                  "cannot open '" + sweep_grid + "'");
      }
      std::stringstream buffer;
      buffer << in.rdbuf();
      nonred::SweepGrid grid = nonred::ParseSweepGrid(buffer.str(), SeedFromEnvironment());
      if (sweep_threads) grid.threads = *sweep_threads;
      WriteOutput(sweep_out, nonred::SweepCsv(nonred::Sweep(grid)));
      return 0;
    }
    if (*verify) {
      if (verify_family != "q") {
        throw nonred::NonredError(nonred::ErrorCode::kInvalidArgument,
                                  "only --family q is supported");
      }
      const nonred::VerifyReport report = nonred::VerifyQ(
          SplitList<int>(verify_n, ParseInt), nonred::ParseRational(verify_kappa),
          SplitList<Rational>(verify_s, ParseRationalItem));
      std::cout << report.ToJson() << "\n";
      return report.all_passed() ? 0 : 1;
    }
    if (*rankfreq) {
      const nonred::RankFrequencyReport report =
          nonred::RankFrequency(rf_n, rf_q, rf_trials, EffectiveSeed(rf_seed));
      std::cout << report.ToJson() << "\n";
      return report.passed() ? 0 : 1;
    }
  } catch (const nonred::NonredError& e) {
    std::cerr << "error [" << nonred::ErrorCodeName(e.code()) << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

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

#ifndef NONRED_BANDIT_ENV_H_
#define NONRED_BANDIT_ENV_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nonred/game.h"
#include "nonred/rng.h"

namespace nonred {

enum class NoiseModel {
  kGaussianUnit,   // X_ij ~ N(a_ij, 1)
  kSignBernoulli,  // X_ij = +1 with probability (1 + a_ij) / 2, else -1
  kNoiseless,      // X_ij = a_ij
};

const char* NoiseModelName(NoiseModel noise);
// Accepts "gaussian_unit", "sign_bernoulli" and "noiseless". Throws
// kParseError otherwise.
NoiseModel ParseNoiseModel(std::string_view name);

// Round-synchronous duel environment. Each round every unordered pair {i, j}
// duels once. The hidden game is never exposed: identification code sees
// only n() and the observations.
//
// Pair k (upper-triangle order) owns the generator seeded with
// DeriveStreamSeed(seed, kDuelNoise, k), so a pair's stream does not depend
// on how often other pairs are drawn.
//
// Move-only and single-threaded.
class DuelEnv {
 public:
  DuelEnv(const ExactGame& hidden, NoiseModel noise, std::uint64_t seed);
  DuelEnv(const FloatGame& hidden, NoiseModel noise, std::uint64_t seed);

  DuelEnv(DuelEnv&&) = default;
  DuelEnv& operator=(DuelEnv&&) = default;
  DuelEnv(const DuelEnv&) = delete;
  DuelEnv& operator=(const DuelEnv&) = delete;

  int n() const { return n_; }
  NoiseModel noise() const { return noise_; }
  std::uint64_t seed() const { return seed_; }

  // One observation per pair in upper-triangle order. The span stays valid
  // until the next call.
  std::span<const double> SampleRound();

  // Draws the next observation of pair k alone, without advancing the round
  // counter. Used to check stream independence.
  double SamplePair(std::size_t k);

  std::int64_t rounds_used() const { return rounds_; }
  std::int64_t total_observations() const {
    return rounds_ * static_cast<std::int64_t>(means_.size());
  }

 private:
  int n_ = 0;
  NoiseModel noise_ = NoiseModel::kNoiseless;
  std::uint64_t seed_ = 0;
  std::vector<double> means_;
  std::vector<SplitMix64> streams_;
  std::vector<double> buffer_;
  std::int64_t rounds_ = 0;
};

}  // namespace nonred

#endif  // NONRED_BANDIT_ENV_H_

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

#include "nonred/bandit_env.h"

#include <string>

#include "nonred/error.h"

namespace nonred {

const char* NoiseModelName(NoiseModel noise) {
  switch (noise) {
    case NoiseModel::kGaussianUnit:
      return "gaussian_unit";
    case NoiseModel::kSignBernoulli:
      return "sign_bernoulli";
    case NoiseModel::kNoiseless:
      return "noiseless";
  }
  return "unknown";
}

NoiseModel ParseNoiseModel(std::string_view name) {
  if (name == "gaussian_unit") return NoiseModel::kGaussianUnit;
  if (name == "sign_bernoulli") return NoiseModel::kSignBernoulli;
  if (name == "noiseless") return NoiseModel::kNoiseless;
  throw NonredError(ErrorCode::kParseError,
                    "unknown noise model '" + std::string(name) + "'");
}

DuelEnv::DuelEnv(const ExactGame& hidden, NoiseModel noise, std::uint64_t seed)
    : DuelEnv(ToFloat(hidden), noise, seed) {}

DuelEnv::DuelEnv(const FloatGame& hidden, NoiseModel noise, std::uint64_t seed)
    : n_(hidden.n()), noise_(noise), seed_(seed), means_(hidden.upper()) {
  streams_.reserve(means_.size());
  for (std::size_t k = 0; k < means_.size(); ++k) {
    streams_.emplace_back(DeriveStreamSeed(seed, StreamPurpose::kDuelNoise, k));
  }
  buffer_.resize(means_.size());
}

double DuelEnv::SamplePair(std::size_t k) {
  const double mean = means_[k];
  switch (noise_) {
    case NoiseModel::kGaussianUnit:
      return mean + streams_[k].NextGaussian();
    case NoiseModel::kSignBernoulli:
      return streams_[k].NextUniform() < 0.5 * (1.0 + mean) ? 1.0 : -1.0;
    case NoiseModel::kNoiseless:
      return mean;
  }
  return mean;
}

std::span<const double> DuelEnv::SampleRound() {
  for (std::size_t k = 0; k < means_.size(); ++k) buffer_[k] = SamplePair(k);
  ++rounds_;
  return buffer_;
}

}  // namespace nonred

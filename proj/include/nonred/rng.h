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

#ifndef NONRED_RNG_H_
#define NONRED_RNG_H_

#include <cstdint>

namespace nonred {

// SplitMix64 finalizer (Steele, Lea & Flood 2014): a bijective 64-bit mixer.
std::uint64_t Mix64(std::uint64_t x);

// Purposes for independent streams derived from one user seed.
enum class StreamPurpose : std::uint64_t {
  kDuelNoise = 1,
  kRandomSkew = 2,
  kCellSeed = 3,
  kTrialSeed = 4,
};

// Key of the stream for (seed, purpose, index). Keys of distinct triples are
// distinct with overwhelming probability; every stream is a SplitMix64
// sequence started at its key.
std::uint64_t DeriveStreamSeed(std::uint64_t seed, StreamPurpose purpose,
                               std::uint64_t index);

// SplitMix64 generator. The k-th output is Mix64(seed + k * 0x9E3779B97F4A7C15),
// so the generator is counter-based and its sequence is fully determined by
// the seed on every platform. All derived distributions below are implemented
// here (no <random> distributions) for the same reason.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next();

  // Uniform on [0, 1) with 53 random bits.
  double NextUniform();

  // Uniform integer on [lo, hi] by rejection sampling (no modulo bias).
  std::int64_t NextInt(std::int64_t lo, std::int64_t hi);

  // Standard normal by the Marsaglia polar method. Each accepted pair yields
  // two variates; the second is returned on the following call.
  double NextGaussian();

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace nonred

#endif  // NONRED_RNG_H_

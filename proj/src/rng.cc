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

#include "nonred/rng.h"

#include <cmath>

namespace nonred {

namespace {
constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;
}  // namespace

std::uint64_t Mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t DeriveStreamSeed(std::uint64_t seed, StreamPurpose purpose,
                               std::uint64_t index) {
  std::uint64_t key = Mix64(seed + kGoldenGamma);
  key = Mix64(key ^ (static_cast<std::uint64_t>(purpose) * kGoldenGamma));
  return Mix64(key ^ Mix64(index + 0x632BE59BD9B4E019ULL));
}

std::uint64_t SplitMix64::Next() {
  state_ += kGoldenGamma;
  return Mix64(state_);
}

double SplitMix64::NextUniform() {
  return static_cast<double>(Next() >> 11) * 0x1.0p-53;
}

std::int64_t SplitMix64::NextInt(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(Next());  // full range
  // Largest multiple of span that fits; draws at or above it are rejected.
  const std::uint64_t limit = (~std::uint64_t{0} / span) * span;
  std::uint64_t draw;
  do {
    draw = Next();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % span);
}

double SplitMix64::NextGaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * NextUniform() - 1.0;
    v = 2.0 * NextUniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

}  // namespace nonred

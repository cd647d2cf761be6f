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

#include "nonred/game.h"

#include <string>

#include "nonred/error.h"
#include "nonred/rng.h"

namespace nonred {

template <typename T>
SkewGame<T> SkewGame<T>::FromUpperTriangle(int n, std::vector<T> upper) {
  if (n < 2) {
    throw NonredError(ErrorCode::kBadDimension,
                      "dimension must be at least 2, got " + std::to_string(n));
  }
  if (upper.size() != UpperSize(n)) {
    throw NonredError(ErrorCode::kWrongLength,
                      "expected " + std::to_string(UpperSize(n)) +
                          " upper-triangle entries, got " +
                          std::to_string(upper.size()));
  }
  for (std::size_t k = 0; k < upper.size(); ++k) {
    const T& v = upper[k];
    if (!ScalarTraits<T>::IsFinite(v) || v > T(1) || v < T(-1)) {
      throw NonredError(ErrorCode::kEntryOutOfRange,
                        "upper-triangle entry " + std::to_string(k) +
                            " is outside [-1, 1]",
                        k);
    }
  }
  return SkewGame(n, std::move(upper));
}

template <typename T>
T SkewGame<T>::entry(int i, int j) const {
  if (i == j) return T(0);
  if (i < j) return upper_[UpperIndex(n_, i, j)];
  return -upper_[UpperIndex(n_, j, i)];
}

template <typename T>
Matrix<T> SkewGame<T>::ToMatrix() const {
  Matrix<T> m(n_, n_);
  std::size_t k = 0;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j, ++k) {
      m(i, j) = upper_[k];
      m(j, i) = -upper_[k];
    }
  }
  return m;
}

template class SkewGame<double>;
template class SkewGame<Rational>;

FloatGame ToFloat(const ExactGame& game) {
  std::vector<double> upper;
  upper.reserve(game.upper().size());
  for (const Rational& v : game.upper()) upper.push_back(v.convert_to<double>());
  return FloatGame::FromUpperTriangle(game.n(), std::move(upper));
}

ExactGame PromoteToExact(const FloatGame& game) {
  std::vector<Rational> upper;
  upper.reserve(game.upper().size());
  for (double v : game.upper()) upper.emplace_back(v);
  return ExactGame::FromUpperTriangle(game.n(), std::move(upper));
}

template <typename T>
Strategy<T> Strategy<T>::FromWeights(std::vector<T> weights) {
  T sum(0);
  for (const T& w : weights) sum += w;
  bool ok;
  if constexpr (std::is_same_v<T, double>) {
    ok = std::fabs(sum - 1.0) <= kFloatSumTolerance;
  } else {
    ok = sum == 1;
  }
  if (weights.empty() || !ok) {
    throw NonredError(ErrorCode::kInvalidArgument,
                      "strategy weights must sum to 1");
  }
  return Strategy(std::move(weights));
}

template <typename T>
T Strategy<T>::MinCoordinate() const {
  T best = weights_.front();
  for (const T& w : weights_) {
    if (w < best) best = w;
  }
  return best;
}

template <typename T>
bool Strategy<T>::InSimplex() const {
  return MinCoordinate() >= 0;
}

template <typename T>
bool Strategy<T>::InOpenSimplex() const {
  return MinCoordinate() > 0;
}

template <typename T>
bool Strategy<T>::InAlphaSimplex(const T& alpha) const {
  return MinCoordinate() >= alpha;
}

template class Strategy<double>;
template class Strategy<Rational>;

ExactGame JanKen() {
  return ExactGame::FromUpperTriangle(3, {Rational(1), Rational(-1), Rational(1)});
}

ExactGame ExtendedJanKen4() {
  // a_12, a_13, a_14, a_23, a_24, a_34
  return ExactGame::FromUpperTriangle(
      4, {Rational(1), Rational(1), Rational(-1), Rational(1), Rational(1),
          Rational(1)});
}

Matrix<Rational> EfronWinProbabilities() {
  Matrix<Rational> b(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      int wins = 0;
      for (int x : kEfronDice[i]) {
        for (int y : kEfronDice[j]) wins += x > y ? 1 : 0;
      }
      b(i, j) = Rational(wins, 36);
    }
  }
  return b;
}

ExactGame EfronDiceGame() {
  const Matrix<Rational> b = EfronWinProbabilities();
  std::vector<Rational> upper;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) upper.push_back(b(i, j) - Rational(1, 2));
  }
  return ExactGame::FromUpperTriangle(4, std::move(upper));
}

ExactGame QInstance(int n, const Rational& kappa, const Rational& s) {
  if (n < 5 || n % 2 == 0) {
    throw NonredError(ErrorCode::kBadDimension,
                      "Q instances need odd n >= 5, got " + std::to_string(n));
  }
  const int half = (n - 1) / 2;
  std::vector<Rational> upper;
  upper.reserve(ExactGame::UpperSize(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int gap = j - i;
      if (i == 0 && j == n - 1) {
        upper.push_back(-2 * kappa + s);
      } else if (gap <= half) {
        upper.push_back(kappa);
      } else {
        upper.push_back(-kappa);
      }
    }
  }
  return ExactGame::FromUpperTriangle(n, std::move(upper));
}

ExactGame RandomSkew(int n, int q, std::uint64_t seed) {
  if (q < 1) {
    throw NonredError(ErrorCode::kInvalidArgument, "q must be positive");
  }
  if (n < 2) {
    throw NonredError(ErrorCode::kBadDimension,
                      "dimension must be at least 2, got " + std::to_string(n));
  }
  SplitMix64 rng(DeriveStreamSeed(seed, StreamPurpose::kRandomSkew,
                                  static_cast<std::uint64_t>(n)));
  std::vector<Rational> upper;
  upper.reserve(ExactGame::UpperSize(n));
  for (std::size_t k = 0; k < ExactGame::UpperSize(n); ++k) {
    upper.emplace_back(rng.NextInt(-q, q), q);
  }
  return ExactGame::FromUpperTriangle(n, std::move(upper));
}

ExactGame ThreeByThree(const Rational& a, const Rational& b, const Rational& c) {
  return ExactGame::FromUpperTriangle(3, {a, -b, c});
}

}  // namespace nonred

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

#ifndef NONRED_GAME_H_
#define NONRED_GAME_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nonred/matrix.h"
#include "nonred/scalar.h"

namespace nonred {

// Payoff matrix of a symmetric two-player zero-sum game. Only the strict
// upper triangle is stored (row-major, i < j); a_ji = -a_ij and a_ii = 0 are
// derived, so a SkewGame is skew-symmetric by construction. Every stored
// entry lies in [-1, 1].
template <typename T>
class SkewGame {
 public:
  // Throws kBadDimension (n < 2), kWrongLength, or kEntryOutOfRange with the
  // offending upper-triangle index.
  static SkewGame FromUpperTriangle(int n, std::vector<T> upper);

  int n() const { return n_; }
  const std::vector<T>& upper() const { return upper_; }

  T entry(int i, int j) const;
  Matrix<T> ToMatrix() const;

  // Position of a_ij (i < j) in the upper-triangle sequence.
  static std::size_t UpperIndex(int n, int i, int j) {
    return static_cast<std::size_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
  }
  static std::size_t UpperSize(int n) {
    return static_cast<std::size_t>(n) * (n - 1) / 2;
  }

  friend bool operator==(const SkewGame&, const SkewGame&) = default;

 private:
  SkewGame(int n, std::vector<T> upper) : n_(n), upper_(std::move(upper)) {}

  int n_ = 0;
  std::vector<T> upper_;
};

using ExactGame = SkewGame<Rational>;
using FloatGame = SkewGame<double>;

FloatGame ToFloat(const ExactGame& game);
// Exact binary-to-rational promotion of every entry.
ExactGame PromoteToExact(const FloatGame& game);

// Element of the affine hull S_n: weights summing to one (exactly for
// Rational, within kFloatSumTolerance for double). Coordinates may be
// negative; the membership predicates tell the simplex variants apart.
template <typename T>
class Strategy {
 public:
  // Throws kInvalidArgument if the weights do not sum to one.
  static Strategy FromWeights(std::vector<T> weights);

  const std::vector<T>& weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  const T& operator[](std::size_t i) const { return weights_[i]; }
  T MinCoordinate() const;

  bool InSimplex() const;          // all >= 0
  bool InOpenSimplex() const;      // all > 0
  bool InAlphaSimplex(const T& alpha) const;  // all >= alpha

  friend bool operator==(const Strategy&, const Strategy&) = default;

 private:
  explicit Strategy(std::vector<T> weights) : weights_(std::move(weights)) {}
  std::vector<T> weights_;
};

// Rock-paper-scissors: a_12 = 1, a_13 = -1, a_23 = 1.
ExactGame JanKen();

// Four items: 1 beats 2 and 3, 2 beats 3 and 4, 3 beats 4, 4 beats 1.
ExactGame ExtendedJanKen4();

// Faces of Efron's four nontransitive dice.
inline constexpr std::array<std::array<int, 6>, 4> kEfronDice = {{
    {0, 0, 4, 4, 4, 4},
    {3, 3, 3, 3, 3, 3},
    {2, 2, 2, 2, 6, 6},
    {1, 1, 1, 5, 5, 5},
}};

// b_ij = P(die i rolls higher than die j), by enumerating all 36 face pairs.
// The diagonal is left at zero.
Matrix<Rational> EfronWinProbabilities();

// A = B - 1/2 off the diagonal.
ExactGame EfronDiceGame();

// Banded instance Q(n, kappa, s) for odd n >= 5. For i < j,
//   kappa        if 1 <= j - i <= (n-1)/2,
//   -kappa       if (n+1)/2 <= j - i <= n-2,
//   -2kappa + s  at (i, j) = (1, n).
// Non-redundant exactly when 0 < s < 2kappa.
ExactGame QInstance(int n, const Rational& kappa, const Rational& s);

// Entries k/q with k uniform on {-q, ..., q}, from the kRandomSkew stream of
// `seed`. Deterministic in (n, q, seed).
ExactGame RandomSkew(int n, int q, std::uint64_t seed);

// 3x3 game written as ((0, a, -b), (-a, 0, c), (b, -c, 0)).
ExactGame ThreeByThree(const Rational& a, const Rational& b, const Rational& c);

}  // namespace nonred

#endif  // NONRED_GAME_H_

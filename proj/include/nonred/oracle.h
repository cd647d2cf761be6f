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

#ifndef NONRED_ORACLE_H_
#define NONRED_ORACLE_H_

#include <string>
#include <vector>

#include "nonred/game.h"
#include "nonred/matrix.h"
#include "nonred/scalar.h"

// Noise-free ground truth. Everything here runs in exact rational arithmetic;
// float games are promoted entry by entry (exact binary value) and the
// promotion is recorded as a warning.

namespace nonred {

// Pfaffian by recursive expansion along the first row,
//   Pf(M) = sum_{j>1} (-1)^j m_1j Pf(M without rows/cols 1 and j),
// memoized on the remaining index set. Pf of the 0x0 matrix is 1 and of any
// odd-dimensional matrix is 0. Throws kNotSkew; supports dimension <= 63.
Rational Pfaffian(const Matrix<Rational>& m);

struct PfaffianReport {
  std::vector<Rational> p;  // p[k] = Pf(A with row and column k deleted)
  bool nonzero = false;
  bool alternating = false;  // nonzero and sign(p[k+1]) = -sign(p[k])
  bool boundary = false;     // some p[k] is exactly zero
  std::vector<std::string> warnings;
};

// Requires odd n (kBadDimension otherwise).
PfaffianReport PrincipalPfaffians(const ExactGame& a);

// Complete mixedness: false for even n; for odd n, true iff the principal
// Pfaffians are all nonzero and alternate in sign.
bool IsNonRedundant(const ExactGame& a);
bool IsNonRedundant(const FloatGame& a, std::vector<std::string>* warnings = nullptr);

// Normalization of (p_1, -p_2, ..., (-1)^(n-1) p_n). Throws
// kNotCompletelyMixed unless IsNonRedundant(a).
Strategy<Rational> NashFromPfaffians(const ExactGame& a);

// Largest min-coordinate over all Nash equilibria:
//   max t  s.t.  x^T A >= 0, sum(x) = 1, x >= 0, x >= t 1.
// Relies on the game value of a skew-symmetric game being zero, so the Nash
// set is exactly { x in S_n^+ : x^T A >= 0 }.
Rational BestEquilibriumMinCoordinate(const ExactGame& a);

// True iff no Nash equilibrium lies in S_n^alpha, alpha in (0, 1/n].
bool IsAlphaRedundant(const ExactGame& a, const Rational& alpha);

// Everything the `oracle` CLI prints.
struct OracleReport {
  int n = 0;
  bool non_redundant = false;
  bool boundary = false;
  std::vector<Rational> pfaffians;  // empty for even n
  std::vector<Rational> equilibrium;  // unique equilibrium when non-redundant
  Rational pi_min = 0;   // min coordinate of `equilibrium` when non-redundant
  Rational best_equilibrium_min = 0;  // LP value, defined for every game
  std::vector<std::string> warnings;
};

OracleReport RunOracle(const ExactGame& a);
OracleReport RunOracle(const FloatGame& a);

}  // namespace nonred

#endif  // NONRED_ORACLE_H_

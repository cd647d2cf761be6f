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

#include "nonred/oracle.h"

#include <cstdint>
#include <string>
#include <unordered_map>

#include "nonred/error.h"
#include "nonred/polytope.h"

namespace nonred {

namespace {

class PfaffianExpander {
 public:
  explicit PfaffianExpander(const Matrix<Rational>& m) : m_(m) {}

  // Pfaffian of the principal submatrix on the index set `remaining`.
  Rational Expand(std::uint64_t remaining) {
    if (remaining == 0) return Rational(1);
    auto it = memo_.find(remaining);
    if (it != memo_.end()) return it->second;

    const int first = __builtin_ctzll(remaining);
    const std::uint64_t rest = remaining & (remaining - 1);
    Rational total(0);
    // The j-th remaining index (1-based position p within the set, p >= 2)
    // contributes with sign (-1)^p.
    bool negative = false;
    for (std::uint64_t scan = rest; scan != 0; scan &= scan - 1) {
      const int j = __builtin_ctzll(scan);
      const Rational& entry = m_(first, j);
      if (entry != 0) {
        const Rational sub = Expand(rest & ~(std::uint64_t{1} << j));
        if (negative) {
          total -= entry * sub;
        } else {
          total += entry * sub;
        }
      }
      negative = !negative;
    }
    memo_.emplace(remaining, total);
    return total;
  }

 private:
  const Matrix<Rational>& m_;
  std::unordered_map<std::uint64_t, Rational> memo_;
};

int Sign(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

}  // namespace

Rational Pfaffian(const Matrix<Rational>& m) {
  if (!IsSkewSymmetric(m)) {
    throw NonredError(ErrorCode::kNotSkew, "Pfaffian needs a skew-symmetric matrix");
  }
  const std::size_t n = m.rows();
  if (n % 2 == 1) return Rational(0);
  if (n > 63) {
    throw NonredError(ErrorCode::kBadDimension, "Pfaffian supports n <= 63");
  }
  const std::uint64_t all = n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n));
  return PfaffianExpander(m).Expand(all);
}

PfaffianReport PrincipalPfaffians(const ExactGame& a) {
  const int n = a.n();
  if (n % 2 == 0) {
    throw NonredError(ErrorCode::kBadDimension,
                      "principal Pfaffians need odd n, got " + std::to_string(n));
  }
  const Matrix<Rational> m = a.ToMatrix();
  PfaffianReport report;
  report.p.reserve(n);
  for (int k = 0; k < n; ++k) report.p.push_back(Pfaffian(Minor(m, k, k)));

  report.nonzero = true;
  for (const Rational& p : report.p) report.nonzero = report.nonzero && p != 0;
  report.boundary = !report.nonzero;
  report.alternating = report.nonzero;
  for (int k = 0; k + 1 < n && report.alternating; ++k) {
    report.alternating = Sign(report.p[k + 1]) == -Sign(report.p[k]);
  }
  return report;
}

bool IsNonRedundant(const ExactGame& a) {
  if (a.n() % 2 == 0) return false;
  return PrincipalPfaffians(a).alternating;
}

bool IsNonRedundant(const FloatGame& a, std::vector<std::string>* warnings) {
  if (warnings != nullptr) {
    warnings->push_back("float input promoted to exact rationals");
  }
  return IsNonRedundant(PromoteToExact(a));
}

Strategy<Rational> NashFromPfaffians(const ExactGame& a) {
  if (a.n() % 2 == 0) {
    throw NonredError(ErrorCode::kNotCompletelyMixed,
                      "even-dimensional games are never completely mixed");
  }
  const PfaffianReport report = PrincipalPfaffians(a);
  if (!report.alternating) {
    throw NonredError(ErrorCode::kNotCompletelyMixed,
                      "principal Pfaffians do not alternate in sign");
  }
  std::vector<Rational> x(report.p.size());
  Rational sum(0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    x[k] = k % 2 == 0 ? report.p[k] : Rational(-report.p[k]);
    sum += x[k];
  }
  for (Rational& v : x) v /= sum;
  return Strategy<Rational>::FromWeights(std::move(x));
}

Rational BestEquilibriumMinCoordinate(const ExactGame& a) {
  return MaxMinCoordinate(a.ToMatrix(), Rational(0), /*nonnegative=*/true);
}

bool IsAlphaRedundant(const ExactGame& a, const Rational& alpha) {
  if (alpha <= 0 || alpha * a.n() > 1) {
    throw NonredError(ErrorCode::kInvalidArgument, "alpha must be in (0, 1/n]");
  }
  return BestEquilibriumMinCoordinate(a) < alpha;
}

OracleReport RunOracle(const ExactGame& a) {
  OracleReport report;
  report.n = a.n();
  if (a.n() % 2 == 1) {
    const PfaffianReport pf = PrincipalPfaffians(a);
    report.pfaffians = pf.p;
    report.boundary = pf.boundary;
    report.non_redundant = pf.alternating;
    if (report.non_redundant) {
      const Strategy<Rational> pi = NashFromPfaffians(a);
      report.equilibrium = pi.weights();
      report.pi_min = pi.MinCoordinate();
    }
  }
  report.best_equilibrium_min = BestEquilibriumMinCoordinate(a);
  return report;
}

OracleReport RunOracle(const FloatGame& a) {
  OracleReport report = RunOracle(PromoteToExact(a));
  report.warnings.push_back("float input promoted to exact rationals");
  return report;
}

}  // namespace nonred

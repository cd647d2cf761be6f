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

#ifndef NONRED_SCALAR_H_
#define NONRED_SCALAR_H_

#include <cmath>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace nonred {

// Arbitrary-precision rational. Expression templates are disabled so that
// `auto` deductions always produce values.
using Rational = boost::multiprecision::number<
    boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

enum class Backend { kExact, kFloat };

const char* BackendName(Backend backend);

// Relative pivot threshold used by every floating-point elimination.
inline constexpr double kFloatPivotTolerance = 1e-9;

// Tolerance for "sums to one" checks on floating-point strategies.
inline constexpr double kFloatSumTolerance = 1e-9;

template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr Backend kBackend = Backend::kFloat;
  static double Abs(double x) { return std::fabs(x); }
  static double ToDouble(double x) { return x; }
  static bool IsFinite(double x) { return std::isfinite(x); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr Backend kBackend = Backend::kExact;
  static Rational Abs(const Rational& x) { return boost::multiprecision::abs(x); }
  static double ToDouble(const Rational& x) { return x.convert_to<double>(); }
  static bool IsFinite(const Rational&) { return true; }
};

// Converts between backends. Rational -> double rounds to nearest; double ->
// Rational is the exact binary value of the double.
template <typename To, typename From>
To ConvertScalar(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else if constexpr (std::is_same_v<To, double>) {
    return ScalarTraits<From>::ToDouble(x);
  } else {
    return Rational(x);
  }
}

// Parses "3", "-0.25", "1e-3", "p/q" (each side may itself be decimal) into
// an exact rational. Decimal strings are read exactly: "0.1" is 1/10.
Rational ParseRational(std::string_view text);

// "p/q", or "p" when the denominator is one.
std::string RationalToString(const Rational& x);

}  // namespace nonred

#endif  // NONRED_SCALAR_H_
